"""Certified Ostrowski/Bullen-type bounds for functions whose second
derivative magnitude is s-convex or log-convex, with a brute-force
verification harness and a composite midpoint-trapezoid application."""

from .core import (
    DEFAULT_TOLERANCES,
    BoundReport,
    BullenBoundsError,
    CertificationError,
    DomainError,
    HolderPair,
    IntegrationError,
    Interval,
    PowerMeanExponent,
    ProblemFrame,
    SecondDerivTriple,
    SExponent,
    Status,
    TestFunction,
    TheoremId,
    Tolerances,
    make_frame,
    make_holder,
)

__version__ = "0.1.0"
