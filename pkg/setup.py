"""Root entry point for pip; the real manifest is packaging/setup.py."""
import runpy
from pathlib import Path

runpy.run_path(str(Path(__file__).resolve().parent / "packaging" / "setup.py"), run_name="__main__")
