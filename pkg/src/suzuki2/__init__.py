"""Toolkit for Suzuki 2-groups, their automorphisms and fusion classes,
and the transitive linear groups over GF(2) that classify them.

Layers, bottom up: gf2n (field arithmetic), linalg (matrices over
GF(2^f)), groups (table-based finite groups), permgrp (permutation
machinery), constructions (the concrete 2-group families), automorphisms
(verified automorphisms, fusion, brute-force oracle), repmod (module
engine: twists, duals, exterior squares, lattices), catalog (transitive
linear groups as matrix data), verify (scenario runner), cli.
"""

__version__ = "0.1.0"
