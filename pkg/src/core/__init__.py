# Exact combinatorial engine
from .words import StarLetter, StarWord
from .partitions import (
    AdaptationMode, BlockPairType, PairPartition, adapted_partitions, classify_block_pair,
    enumerate_nc2, is_adapted, nearest_outer,
)
from .trees import (
    AlternationType, LabeledOrderedTree, OrderedTree, count_labeled_ordered_trees,
    enumerate_alternating, enumerate_ordered_trees, is_alternating, partition_to_tree, tree_to_partition,
)
from .volumes import ColorPoset, count_linear_extensions, monte_carlo_volume, region_constraints, volume
from .profiles import VarianceProfile
from .moments import (
    MomentResult, OperatorKind, OperatorSpec, creation_moment, eta_moment,
    profile_refinement_sequence, triangular_moment_closed_form,
)

__all__ = [
    'StarLetter', 'StarWord',
    'AdaptationMode', 'BlockPairType', 'PairPartition', 'adapted_partitions', 'classify_block_pair',
    'enumerate_nc2', 'is_adapted', 'nearest_outer',
    'AlternationType', 'LabeledOrderedTree', 'OrderedTree', 'count_labeled_ordered_trees',
    'enumerate_alternating', 'enumerate_ordered_trees', 'is_alternating', 'partition_to_tree', 'tree_to_partition',
    'ColorPoset', 'count_linear_extensions', 'monte_carlo_volume', 'region_constraints', 'volume',
    'VarianceProfile',
    'MomentResult', 'OperatorKind', 'OperatorSpec', 'creation_moment', 'eta_moment',
    'profile_refinement_sequence', 'triangular_moment_closed_form',
]
