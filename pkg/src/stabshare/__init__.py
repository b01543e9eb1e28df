"""Exact tools for stabilizer secret sharing on the five- and seven-qubit codes.

The package is organized bottom-up:

- :mod:`stabshare.gf2` -- bit-exact linear algebra over GF(2), symplectic and
  quadratic forms, subspace enumeration.
- :mod:`stabshare.pauli` -- phased n-qubit Pauli operators on top of the GF(2)
  encoding.
- :mod:`stabshare.ring` -- the exact amplitude ring (x + y*sqrt(2))/2^k with
  Gaussian-integer x, y.
- :mod:`stabshare.states` -- exact state vectors, projectors, standard bases,
  reduced density matrices.
- :mod:`stabshare.codes` -- the [[5,1,3]] and [[7,1,3]] stabilizer groups,
  their 2+3 and 3+4 splits, signed line/plane inventories.
- :mod:`stabshare.polar` -- symplectic polar spaces, hyperbolic quadrics,
  spreads, the Pluecker/Klein line correspondence.
- :mod:`stabshare.contextuality` -- sign-assignment satisfiability and the
  degree of contextuality.
- :mod:`stabshare.identities` -- machine verification of the branching
  decompositions that drive the protocols.
- :mod:`stabshare.protocols` -- end-to-end simulation of the (3,5) and (4,7)
  secret-sharing protocols.
- :mod:`stabshare.cli` -- the ``stabshare`` command-line interface.
"""

__version__ = "0.1.0"
