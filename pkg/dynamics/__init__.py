"""Update rules, traces, orbits and the equivalence harness."""
