"""Zero-error communication through permutation channels.

Counting (classical, ancilla-free quantum, ancilla-assisted), explicit
cyclic encoding bases, character-table oracles, and exhaustive zero-error
certification, all at desk scale.
"""

from .channel import (
    ChannelSpec,
    DenseCodingInstance,
    DenseCodingResult,
    ZeroErrorReport,
    apply_channel_classical,
    apply_channel_quantum,
    apply_permutation_state,
    decode_classical,
    decode_quantum,
    dense_coding_certify,
    dense_coding_instance,
    dense_coding_roundtrip,
    verify_zero_error,
    weyl_operators,
)
from .characters import (
    CharacterTable,
    FSIndicators,
    MultiplicityVector,
    ambient_multiplicities,
    character_table,
    frobenius_schur_indicators,
    is_totally_orthogonal,
    isotypic_projector,
    na_oracle,
    nq_oracle,
    unit_root,
)
from .counting import (
    AsymptoticEstimate,
    CountReport,
    asymptotic_estimate,
    count_ancilla_polya,
    count_classical_burnside,
    count_cyclic,
    count_dihedral,
    count_quantum_totally_orthogonal,
    count_report,
    count_symmetric,
    cycle_index_symmetric,
    partitions,
    series_coefficient_nq,
    symmetric_class_size,
)
from .encoding import (
    FourierState,
    MessageBasis,
    StateVector,
    encode_message,
    fkm_representatives,
    irrep_label,
    message_basis_cyclic,
    orbit_fourier_basis,
)
from .perms import (
    ColoredString,
    ConjugacyClass,
    CycleDecomposition,
    Orbit,
    Permutation,
    PermutationGroup,
    act_on_index,
    act_on_string,
    conjugacy_classes,
    cycle_count,
    cycle_decomposition,
    cycle_type,
    generate_group,
    load_group_file,
    make_named_group,
    orbits,
    parse_group_file,
    square_root_count,
    stabilizer,
)

__version__ = "0.1.0"
