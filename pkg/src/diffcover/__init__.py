"""Cyclic difference covering arrays, the Latin squares they generate,
and deterministic backtracking search for small ingredients."""

from .core import (
    DesignError,
    DiffMultiset,
    Form,
    Kind,
    NotNormalized,
    ParseError,
    Residue,
    ResidueArray,
    diff_multiset,
    read_array,
    to_full,
    to_reduced,
    write_array,
)
from .verify import (
    BadHole,
    BadShape,
    Check,
    OddOrderStrict,
    VerificationReport,
    Witness,
    check_column_bound,
    verify_dca,
    verify_dm,
    verify_hdm,
)
from .construct import (
    BadIndex,
    BadParams,
    FourMFamilyParams,
    IngredientInvalid,
    MismatchedK,
    NoMethod,
    NotPrime,
    OddFamilyParams,
    SixMuFamilyParams,
    SpectrumEntry,
    TooManyColumns,
    UnknownOrder,
    construct_4m,
    construct_4m_general,
    construct_6mu,
    construct_auto,
    construct_by_method,
    construct_from_table,
    construct_odd,
    dca_product,
    dm_prime,
    hdm_product,
    insert_hole,
    params_odd,
    spectrum_report,
)
from .latin import (
    BadOrdering,
    Classification,
    LatinSquare,
    OddOrder,
    OrderMismatch,
    PairProfile,
    check_row_complete,
    classify_pair,
    latin_from_dca,
    mnols_set_check,
    superimpose,
    williams_order,
    write_latin,
)
from .search import (
    BudgetExhausted,
    InfeasibleFixedColumns,
    NoSolution,
    OrderTooLarge,
    SearchConfig,
    enumerate_third_columns,
    search_hdm,
    search_third_column,
)

__version__ = "0.1.0"
