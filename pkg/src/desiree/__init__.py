"""Desiree: a requirements refinement calculus.

Parse description-based requirement models, validate refinement operator
applications, decide structural subsumption, detect inconsistencies, and
answer interrelation queries.
"""

__version__ = "0.1.0"
