"""Periodic points of the 2-adic branch of the quartic Fermat correspondence.

Subpackages: ``exactalg`` (integer and F_q polynomials, resultants, factoring),
``padic`` (unramified extensions of Q_2 with precision tags), ``tmap`` (the
branch T and its rescaling), ``resultants`` (R_n, P_n and the disk cache),
``dynamics`` (periodic orbits and their lifts), ``classfield`` (binary forms
and discriminant labels), ``isogeny`` (finite-field identity checks) and
``cli``.
"""

__version__ = "0.1.0"
