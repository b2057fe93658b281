"""Short anchor labels for the identities the engine checks.

Each report record carries one of these strings so a reader can tell at a
glance which identity a verdict refers to.  The strings are stable API; tests
assert report records only ever use anchors from this table.
"""

PLUMBING = "invented — artifact plumbing"
CANONICAL_PROJECTION = "with canonical projection $p$"
FACTOR_UNIQUELY = "factor uniquely through the projection"
ALGEBRA = "If ${\\cal A}$ is an algebra"
BIMODULE = "$M$ an ${\\cal A}$-bimodule"
RIGHT_MODULE = "Let $N$ be a right ${\\cal A}$-module"
TENSOR_OVER_A = "connection $\\nabla_\\otimes:N\\otimes_\\A M\\to$"
HOM_SPACE = "additive group of right ${\\cal A}$-homorphisms"
END_RING = "ring of right ${\\cal A}$-endomorphism"
KAPPA0 = "canonical algebra homomorphism"
FIRST_ORDER_CALCULUS = "a differential calculus over ${\\cal A}$"
GRADED_CALCULUS = "$(\\O({\\cal A}),\\d)$ a differential calculus"
LATTICE = "the structure of a lattice"
PARTIAL_ORDER = "obvious partial ordering on the set"
RHO_EXISTS = "a homomorphism $\\rho$ exists, such that"
UNIVERSAL_FIRST_ORDER = "the univeral first order differential calculus"
DIAGRAM_COMMUTES = "the following diagram commutes"
RIGHT_LEIBNIZ = "the right Leibniz rule"
NABLA_HAT = "connection on M induces a map"
DEGREE_R = "of degree $r$ we set"
OMEGA_HAT = "finite linear combinations of expressions"
INDUCED_SUBGROUP = "which is the additive subgroup"
DERIVATION_SINCE = "is a derivation since"
GENERALIZED_PERMUTATION = "use a generalized permutation"
LEFT_LEIBNIZ = "impose additionally a left Leibniz rule"
EXTENDING_NABLA = "Extending ∇ to"
CURVATURE = "the curvature of ∇ is the map ∇²"
FACTORING_PROPOSED = "it is proposed the factoring out"
RIGHT_OMEGA_HOM = "is a right $\\O$-homomorphism"
NOT_LEFT_LINEAR = "it is not even a left"
GRADED_DERIVATION = "is a graded derivation"
J_GENERATORS = "generated by elements of the form"
J_CLOSURE = "important to note that"
J_DEGREES_01 = "since $J^0=J^1=\\{0\\}$, we put"
UNIQUE_FACTORIZATIONS = "have unique factorizations"
OMEGA_NABLA_GRADED = "Let $\\O_\\nabla({\\cal A})$ be the graded algebra of the factors"
D_NABLA_SQUARED = "which satisfies additionlly"
OMEGA0_IS_A = "we put $\\O^0_\\nabla({\\cal A})={\\cal A}$"
SIGMA_U_GRADED = "graded in the first factor"
SIGMA_U_DEGREE0 = "with $\\sigma_u(f\\otimes_\\A\\xi)=f\\xi$"
SIGMA_FULL_IFF = "if, and only if  we have"
ASSUME_DEGENERACY = "in the following we assume"
TENSOR_CONNECTION = "A connection on the tensor product"
INTERPRETED = "interpreted in the sense of"
NU_HAT = "then we have also a homomorphism"
ORIGINAL_ROUTE = "then one can define a connection"
ASSOCIATED = "unique associated connection"
NEC_SUFF = "necessary and sufficient condition"

ALL = {v for k, v in vars().items() if k.isupper() and isinstance(v, str)}
