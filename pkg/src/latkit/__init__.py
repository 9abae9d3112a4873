'''Finite-lattice constructions and decision procedures.

The package builds tensor-style products of finite lattices (bi-ideal
tensor, box product, confined-element lattice tensor product, triple
lattices over M3 and N5), computes congruence lattices, decides
transferability-related properties, and machine-checks the structural
theorems relating all of these on small instances. An HTTP service
wraps the core and the CLI is a thin client for it.
'''

from .boxprod import (BoxElement, BoxLattice, BoxSpace, BoxdotElement,
                      LatticeTensorProduct, TripleLattice, box_closure,
                      box_product, embedding_check, lattice_tensor_product,
                      ltp_theorems, mu_iso, triple_iso_check, triples)
from .catalog import all_lattices, random_lattice, random_lattices
from .congruence import (ConLattice, Congruence, cong_preserving_check,
                         con_lattice, congruence_from_blocks,
                         glq_isomorphism_check, is_sub_tensor_product,
                         permutable, principal_congruence,
                         trivial_congruence)
from .errors import (CyclicCovers, EmptyResult, LatkitError, MalformedInput,
                     MalformedTerm, MixedPreconditionViolated, NotACongruence,
                     NotALattice, NotAnEmbedding, NotDistributive, NotSimple,
                     SizeLimitExceeded, UnknownFamily)
from .freelat import (FragmentReport, FreeTerm, SymbolicTensor,
                      canonical_term, format_term, free_lattice_fragment,
                      parse_term, whitman_leq)
from .order import (FiniteLattice, FinitePoset, JoinSemilattice, boolean,
                    build_lattice, chain, find_isomorphism, ideal_lattice,
                    is_lattice, m3, n5, named_family, power, product, w7)
from .tensor import (BiIdealSpace, HomTensor, TensorLattice,
                     bi_ideal_elements, count_bi_ideals, hom_tensor,
                     tensor_product)
from .transfer import (classify, con_of_amenable_representable,
                       condition_T, ji_con_bijection, minimal_pairs,
                       spike_analysis, t_join_batch_check, whitman)
from .verify import RunConfig, SUITE_IDS, run_suite

__version__ = '0.1.0'

__all__ = [
    'BiIdealSpace', 'BoxElement', 'BoxLattice', 'BoxSpace',
    'BoxdotElement', 'ConLattice', 'Congruence', 'CyclicCovers',
    'EmptyResult', 'FiniteLattice', 'FinitePoset', 'FragmentReport',
    'FreeTerm', 'HomTensor', 'JoinSemilattice', 'LatkitError',
    'LatticeTensorProduct', 'MalformedInput', 'MalformedTerm',
    'MixedPreconditionViolated', 'NotACongruence', 'NotALattice',
    'NotAnEmbedding', 'NotDistributive', 'NotSimple', 'RunConfig',
    'SUITE_IDS', 'SizeLimitExceeded', 'SymbolicTensor', 'TensorLattice',
    'TripleLattice', 'UnknownFamily', 'all_lattices',
    'bi_ideal_elements', 'boolean', 'box_closure', 'box_product',
    'build_lattice', 'canonical_term', 'chain', 'classify',
    'con_lattice', 'con_of_amenable_representable', 'condition_T',
    'cong_preserving_check', 'congruence_from_blocks',
    'count_bi_ideals', 'embedding_check', 'find_isomorphism',
    'format_term', 'free_lattice_fragment', 'glq_isomorphism_check',
    'hom_tensor', 'ideal_lattice', 'is_lattice',
    'is_sub_tensor_product', 'ji_con_bijection',
    'lattice_tensor_product', 'ltp_theorems', 'm3', 'minimal_pairs',
    'mu_iso', 'n5', 'named_family', 'parse_term', 'permutable',
    'power', 'principal_congruence', 'product', 'random_lattice',
    'random_lattices', 'run_suite', 'spike_analysis',
    't_join_batch_check', 'tensor_product', 'trivial_congruence',
    'triple_iso_check', 'triples', 'w7', 'whitman', 'whitman_leq',
]
