"""Cherries in random labeled trees, graph automorphisms and sufficient criteria for quantum symmetry."""

from .cherries import (
    Cherry,
    MomentReport,
    TrialSummary,
    asymptotic_moments,
    exact_moments,
    expectation_epsilon,
    expectation_epsilon_pair,
    find_cherries,
    monte_carlo_cherries,
    variance_ratios,
)
from .coherent import (
    CoherentConfiguration,
    OrbitalConfiguration,
    is_full,
    orbital_configuration,
    verify_coherence_axioms,
    wl2_stabilize,
)
from .graph import (
    Graph,
    Permutation,
    complete_graph,
    cycle_graph,
    degree,
    disjoint_union,
    empty_graph,
    is_automorphism,
    is_tree,
    path_graph,
    star_graph,
)
from .graph6 import Graph6Error, graph6_decode, graph6_encode
from .symmetry import (
    AutomorphismReport,
    ClassifyOptions,
    QuantumSymmetryVerdict,
    Status,
    brute_force_automorphisms,
    cherry_swap,
    classify,
    disjoint_cherry_pair,
    find_disjoint_automorphism_pair,
    tree_automorphism_order,
)
from .trees import (
    SampleStream,
    enumerate_all_trees,
    prufer_decode,
    prufer_encode,
    sample_gnp,
    sample_rng,
    sample_uniform_tree,
)

__version__ = "0.1.0"
