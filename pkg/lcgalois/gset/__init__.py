"""G-set Galois theory: orbits, stabilizers, Galois objects and the slice equivalence."""
