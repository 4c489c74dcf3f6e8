from .poly import CoeffDomain, MultiPoly, DomainMismatch, QQ, coeffs_in, pseudo_divide, prem, is_prime
from .finite_field import GF, FqElement, fq_make, FieldTooLarge, FIELD_CAP
