"""Anonymity of threshold key sharing built on perfect hash families."""

from .access import (
    AccessStructure,
    KeyComponent,
    RecoverySet,
    all_keys,
    derive_assignment,
    q_product,
    recoverable_keys,
    recovery_set,
    threshold_soundness,
)
from .anonymity import (
    AnonymityReport,
    Scheme,
    bounds_zs,
    closed_form_measures_proportional,
    group_posterior,
    group_prior,
    key_given_group,
    key_marginal,
    measures,
    participant_posterior,
)
from .general import (
    GeneralReport,
    GeneralSetup,
    general_measures,
    phf_to_general,
    recovers,
    validate_threshold,
)
from .io import InputDocument, ParseError, load, parse_input, serialize
from .phf import (
    ComponentSet,
    DegenerateStructureError,
    KeyId,
    PhfArray,
    PhfError,
    TooLargeError,
    ValidationReport,
    component_set,
    is_balanced,
    separating_rows,
    validate_phf,
)
from .simulator import RestartVariant, SimConfig, SimResult, compare_to_exact, run

__version__ = "0.1.0"
