"""
Reference data for codecrypt-lab.

The worked toy examples every scheme is replayed against, and the NIST
round-3 parameter rows (Classic McEliece, BIKE, HQC) with their published
key and ciphertext sizes. Matrices are stored as digit strings, field
elements of GF(2^m) as integers (bit i is the coefficient of x^i), ring
elements as exponent lists, and all positions are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from codecrypt_lab.errors import UnknownParamSet


@dataclass(frozen=True)
class ExampleRecord:
    """One worked example: inputs to replay and the values it must produce."""

    key: str
    title: str
    inputs: dict[str, Any]
    expected: dict[str, Any]
    notes: tuple[str, ...] = ()


# ---------------------------------------------------------------------------
# Encryption toys
# ---------------------------------------------------------------------------

HAMMING_MCELIECE = ExampleRecord(
    key="hamming-mceliece",
    title="McEliece with the [7,4] binary Hamming code",
    inputs={
        "G": ("1000110", "0100101", "0010011", "0001111"),
        "S": ("0111", "1011", "1010", "0011"),
        "P": (
            "0100000",
            "0001000",
            "0000010",
            "1000000",
            "0000100",
            "0010000",
            "0000001",
        ),
        "t": 1,
        "m": "1011",
        "e": "1000000",
    },
    expected={
        "G_pub": ("1001011", "1110010", "0100111", "1000110"),
        "mG_pub": "0101010",
        "c": "1101010",
        "c_unpermuted": "1111000",
        "mS": "1110",
        "S_inv": ("0101", "1001", "0111", "0110"),
        "m": "1011",
        # message-recovery attack on the public key
        "G_bar": ("1000110", "0100111", "0010011", "0001101"),
        "H_bar": ("1101100", "1110010", "0111001"),
        "s": "110",
        "m_bar": "0101",
    },
    notes=("The fourth row of S·G·P is 1000110.",),
)

NIEDERREITER = ExampleRecord(
    key="niederreiter",
    title="Niederreiter with the [7,4] binary Hamming code",
    inputs={
        "H": ("1101100", "1011010", "0111001"),
        "S": ("110", "011", "001"),
        # the permutation of the McEliece toy reproduces H'
        "P": (
            "0100000",
            "0001000",
            "0000010",
            "1000000",
            "0000100",
            "0010000",
            "0000001",
        ),
        "t": 1,
        "m": "0010000",
    },
    expected={
        "H_pub": ("0011110", "0111001", "1001011"),
        "c": "110",
        "s_unscrambled": "010",
        "e_unpermuted": "0000010",
        "m": "0010000",
    },
)

PRANGE_F5 = ExampleRecord(
    key="prange-f5",
    title="Prange's algorithm over GF(5)",
    inputs={
        "q": 5,
        "H": (
            "3214304434",
            "2340123242",
            "3031402200",
            "2302314430",
            "0230203424",
            "2340220012",
        ),
        "s": "240204",
        "t": 2,
        "not_information_set": (0, 1, 2, 3),
        "first_choice": (0, 1, 2, 4),
        "information_set": (6, 7, 8, 9),
    },
    expected={
        "UH_first": (
            "3411000000",
            "0330410000",
            "4420401000",
            "1440300100",
            "2020200010",
            "0130100001",
        ),
        "s_first": "003240",
        "UH": (
            "1000004004",
            "0100001103",
            "0010004211",
            "0001000440",
            "0000102320",
            "0000012443",
        ),
        "s_prime": "200400",
        "e": "2004000000",
    },
    notes=("s·U₂ᵀ for the first choice is (0,0,3,2,4,0), of weight 3.",),
)

QC_REPETITION = ExampleRecord(
    key="qc",
    title="Quasi-cyclic scheme over GF(2)[x]/(x^7+1) with the repetition code",
    inputs={
        "n": 7,
        "h": (0, 1, 2),
        "y": (0,),
        "z": (3,),
        "m": "1",
        "e": (1,),
        "r1": (2,),
        "r2": (2,),
        "exercise": {"e": (4,), "r1": (0,), "r2": (1,)},
    },
    expected={
        "s": "1001110",
        "s_r2": "1010011",
        "u": "0001100",
        "v": "0001100",
        "uz": "1000001",
        "v_minus_uz": "1001101",
        "m": "1",
        "exercise_noise_weight": 3,
        "exercise_decrypts": True,
    },
)

GPT_GF32 = ExampleRecord(
    key="gpt",
    title="GPT with a [4,2] Gabidulin code over GF(32)",
    inputs={
        "modulus": (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1
        "g": (1, 2, 4, 8),
        "k": 2,
        "S": ((1, 2), (0, 1)),
        "X": ((1,), (5,)),
        "P": ("00100", "10000", "01000", "00001", "00010"),
        "t": 1,
        "m": (3, 5),
        "e": (9, 0, 9, 9, 0),
    },
    expected={
        "G": ((1, 2, 4, 8), (1, 4, 16, 10)),
        "G_pub": ((3, 10, 11, 28, 1), (1, 4, 5, 10, 16)),
        "c": (9, 10, 5, 15, 25),
        "c_unpermuted": (5, 9, 10, 25, 15),
        "mS": (3, 3),
        "m": (3, 5),
    },
)

ALEKHNOVICH = ExampleRecord(
    key="alekhnovich",
    title="Alekhnovich's first scheme on six coordinates",
    inputs={
        "A": ("110000", "101000", "000110", "000101"),
        "x": "0101",
        "e": "100000",
        "e_prime": "010000",
        "c1": "101001",
    },
    expected={
        "y": "001101",
        "G": ("000111",),
        "c0": "010111",
        "decrypt_c0": 0,
        "decrypt_c1": 1,
    },
)


# ---------------------------------------------------------------------------
# Reduction example
# ---------------------------------------------------------------------------

TDM_EXAMPLE = ExampleRecord(
    key="3dm",
    title="3-dimensional matching to syndrome decoding",
    inputs={
        "T": ("A", "B", "C", "D"),
        "U": (
            ("D", "A", "B"),
            ("C", "B", "A"),
            ("D", "A", "B"),
            ("B", "C", "D"),
            ("C", "D", "A"),
            ("A", "D", "A"),
            ("A", "B", "C"),
        ),
    },
    expected={
        "H_T": (
            "000110000100",
            "001001001000",
            "000110000100",
            "010000100001",
            "001000011000",
            "100000011000",
            "100001000010",
        ),
        "e": "1001101",
        "W": (("D", "A", "B"), ("B", "C", "D"), ("C", "D", "A"), ("A", "B", "C")),
    },
)


ALL_EXAMPLES: list[ExampleRecord] = [
    HAMMING_MCELIECE,
    NIEDERREITER,
    PRANGE_F5,
    QC_REPETITION,
    GPT_GF32,
    ALEKHNOVICH,
    TDM_EXAMPLE,
]


def get_example(key: str) -> ExampleRecord:
    for record in ALL_EXAMPLES:
        if record.key == key:
            return record
    raise UnknownParamSet(f"no worked example named {key!r}")


# ---------------------------------------------------------------------------
# NIST parameter sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NistParamSet:
    """A published parameter row with its key and ciphertext sizes in bytes."""

    scheme: str  # classic-mceliece | bike | hqc
    name: str
    level: int
    params: dict[str, int] = field(default_factory=dict)
    pk_bytes: int = 0
    sk_bytes: int = 0
    ct_bytes: int = 0


NIST_PARAM_SETS: list[NistParamSet] = [
    NistParamSet("classic-mceliece", "mceliece348864", 1,
                 {"m": 12, "n": 3488, "t": 64}, 261120, 6492, 128),
    NistParamSet("classic-mceliece", "mceliece460896", 3,
                 {"m": 13, "n": 4608, "t": 96}, 524160, 13608, 188),
    NistParamSet("classic-mceliece", "mceliece6688128", 5,
                 {"m": 13, "n": 6688, "t": 128}, 1044992, 13932, 240),
    NistParamSet("classic-mceliece", "mceliece6960119", 5,
                 {"m": 13, "n": 6960, "t": 119}, 1047319, 13948, 226),
    NistParamSet("classic-mceliece", "mceliece8192128", 5,
                 {"m": 13, "n": 8192, "t": 128}, 1357824, 14120, 240),
    NistParamSet("bike", "bike-l1", 1,
                 {"r": 12323, "w": 142, "t": 134}, 1541, 281, 1573),
    NistParamSet("bike", "bike-l3", 3,
                 {"r": 24659, "w": 206, "t": 199}, 3083, 419, 3115),
    NistParamSet("bike", "bike-l5", 5,
                 {"r": 40973, "w": 274, "t": 264}, 5122, 580, 5154),
    NistParamSet("hqc", "hqc-128", 1,
                 {"n": 17669, "n1": 46, "n2": 384, "w": 66, "w_r": 75, "w_e": 75}, 2249, 40, 4481),
    NistParamSet("hqc", "hqc-192", 3,
                 {"n": 35851, "n1": 56, "n2": 640, "w": 100, "w_r": 114, "w_e": 114}, 4522, 40, 9026),
    NistParamSet("hqc", "hqc-256", 5,
                 {"n": 57637, "n1": 90, "n2": 640, "w": 131, "w_r": 149, "w_e": 149}, 7245, 40, 14469),
]


def get_param_set(scheme: str, level: int | str) -> NistParamSet:
    """Look up a row by scheme and either its name or its numeric level.

    Classic McEliece has three level-5 rows; a numeric level picks the first.
    """
    for row in NIST_PARAM_SETS:
        if row.scheme != scheme:
            continue
        if str(level) in (row.name, row.name.removeprefix("mceliece"), str(row.level), f"level{row.level}"):
            return row
    raise UnknownParamSet(f"no {scheme} parameter set {level!r}")


def param_sets_for(scheme: str) -> list[NistParamSet]:
    return [row for row in NIST_PARAM_SETS if row.scheme == scheme]
