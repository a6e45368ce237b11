"""Transcribed operation tables of the four worked-example algebras.

Each entry keeps the printed row/column order of its tables
(``table_order``) separately from the internal element order (``labels``);
:func:`shkit.paper.builtin` normalizes between the two.  Lattice orders are
decoded from the Hasse diagrams into cover lists; the full axiom sweep at
load time is what vouches for each decoding.
"""

FIG1 = {
    "labels": ["0", "a", "b", "c", "d", "e", "1"],
    "covers": [
        ("0", "d"), ("0", "b"), ("d", "a"), ("b", "a"),
        ("a", "e"), ("a", "c"), ("e", "1"), ("c", "1"),
    ],
    "table_order": ["0", "1", "d", "e", "b", "c", "a"],
    "arrow": [
        "1 1 1 1 1 1 1",
        "0 1 d e b c a",
        "b 1 1 1 b 1 1",
        "0 1 d 1 b c c",
        "d 1 d 1 1 1 1",
        "0 1 d e b 1 e",
        "0 1 d 1 b 1 1",
    ],
    "neg": "1 0 e d c b a",
}

FIG2 = {
    "labels": ["0", "1", "2", "3", "4"],
    "covers": [("0", "2"), ("0", "3"), ("2", "4"), ("3", "4"), ("4", "1")],
    "table_order": ["0", "1", "2", "3", "4"],
    "arrow": [
        "1 0 3 2 0",
        "0 1 2 3 4",
        "3 2 1 0 2",
        "2 3 0 1 3",
        "0 1 2 3 1",
    ],
    "neg": "1 0 1 1 1",
}

FIG3 = {
    "labels": ["0", "1", "a", "b", "c", "d"],
    "covers": [
        ("0", "d"), ("0", "b"), ("d", "a"), ("b", "a"),
        ("d", "c"), ("a", "1"), ("c", "1"),
    ],
    "table_order": ["0", "1", "a", "b", "c", "d"],
    "arrow": [
        "1 0 0 c b b",
        "0 1 a b c d",
        "0 1 1 b c c",
        "c b b 1 0 0",
        "b c d 0 1 a",
        "b c c 0 1 1",
    ],
    "neg": "1 0 b b c 1",
}

EX15 = {
    "labels": [str(i) for i in range(15)],
    "covers": [
        ("0", "3"), ("0", "13"), ("0", "10"),
        ("3", "14"), ("3", "11"),
        ("13", "14"), ("13", "6"),
        ("10", "11"), ("10", "6"), ("10", "8"),
        ("14", "12"), ("14", "7"),
        ("11", "7"), ("11", "9"),
        ("6", "7"), ("6", "4"),
        ("8", "9"), ("8", "4"),
        ("12", "2"),
        ("7", "2"), ("7", "5"),
        ("9", "5"),
        ("4", "5"),
        ("2", "1"),
        ("5", "1"),
    ],
    "table_order": [str(i) for i in range(15)],
    "arrow": [
        "1 1 1 1 1 1 1 1 1 1 1 1 1 1 1",
        "0 1 2 3 4 5 6 7 8 9 10 11 12 13 14",
        "0 1 1 3 4 5 4 5 8 9 8 9 12 13 14",
        "4 1 1 1 4 1 4 1 4 1 4 1 1 4 1",
        "3 1 2 3 1 1 2 2 9 9 11 11 12 12 12",
        "0 1 2 3 4 1 6 2 8 9 10 11 12 13 12",
        "3 1 1 3 1 1 1 1 9 9 9 9 12 12 12",
        "0 1 1 3 4 1 4 1 8 9 8 9 12 13 12",
        "12 1 2 12 1 1 2 2 1 1 2 2 12 12 12",
        "13 1 2 12 4 1 6 2 4 1 6 2 12 13 12",
        "12 1 1 12 1 1 1 1 1 1 1 1 12 12 12",
        "13 1 1 12 4 1 4 1 4 1 4 1 12 13 12",
        "8 1 1 9 4 5 4 5 8 9 8 9 1 4 5",
        "9 1 1 9 1 1 1 1 9 9 9 9 1 1 1",
        "8 1 1 9 4 1 4 1 8 9 8 9 1 4 1",
    ],
    "neg": "1 0 3 2 8 10 9 11 8 10 9 11 12 1 2",
}

ALGEBRAS = {"fig1": FIG1, "fig2": FIG2, "fig3": FIG3, "ex15": EX15}
