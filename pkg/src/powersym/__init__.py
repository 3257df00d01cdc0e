"""Core-periphery influence analysis: shift diagrams, elite axioms and their random-graph baselines."""

__version__ = "0.1.0"

from .errors import DegeneratePartitionError, DomainError, GraphFormatError, NotAnEliteError, PowersymError
from .graph import Graph, TimestampedEdgeList, ingest_edge_list, write_edge_list
from .influence import (
    InfluenceBlock,
    Partition,
    ShiftDiagram,
    influence_between,
    influence_block,
    k_sqrt_m,
    shift_diagram,
    symmetry_point,
    total_influence,
)
from .elites import c_core_elite, core_decomposition, rich_club
from .axioms import AxiomConfig, check_axioms, density, sweep_ratios
from .generators import (
    DegreeSequence,
    ElitisticParams,
    degree_symmetry_point,
    expected_influence,
    generate_configuration,
    generate_elitistic,
    generate_elitistic_growth,
    generate_grid,
)
from .temporal import build_frames, elite_fraction_series
