"""qladder: q-orthogonal polynomials, q-discrete Painleve orbits and ladder identities"""

__version__ = "0.1.0"
