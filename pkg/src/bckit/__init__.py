"""Exact verification kit for higher Bott-Chern form machinery.

Submodules:

* ``combinatorics``: binomial coefficient families and their identities
* ``dga``: a free bigraded differential algebra with Deligne products
* ``form_checks``: identity catalog over the free algebra
* ``linalg``: exact rational matrices and normal-form quotients
* ``cubes``: exact cubes, chains of cubes and their operations
* ``simplicial``: S- and G-constructions and the Cub map
* ``cube_checks``: identity catalog over cubes
* ``cli``: the ``bckit verify`` command
"""

__version__ = "0.1.0"
