"""Action models, product update and the catalog of 27 threshold updates."""
