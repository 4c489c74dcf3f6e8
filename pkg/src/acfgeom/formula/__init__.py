from .ast import (Atom, And, EQ, Exists, FalseF, Forall, Formula, InfMany, NE, Not, Or, TrueF,
                  SubstitutionError, all_names, alpha_equal, atoms, bound_vars, conj, disj, domain_of,
                  eq, free_vars, fresh_name, freshen_bound, has_infmany, is_quantifier_free, map_atoms,
                  ne, neg, rename_free, subformulas, substitute, with_domain)
from .normal import DEFAULT_BUDGET, BudgetExceeded, Disjunct, DnfMatrix, nnf, prenex, to_dnf
from .parser import ParseError, ShadowingError, parse, parse_poly, tokenize
from .printer import to_text

print_formula = to_text
