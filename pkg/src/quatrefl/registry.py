"""Embedded table of published values and the harness that checks them."""
from __future__ import annotations

from dataclasses import dataclass

REGISTRY_VERSION = 1

FAST, FULL = "fast", "full"


@dataclass(frozen=True)
class Record:
    rid: str
    system: str
    kind: str        # poincare, poincare-factor, codim, codim-factor, census-count, order, mu, e, codim-enum
    expected: object
    citation: str
    suite: str = FAST
    detail: tuple = ()   # (rank, label) for census counts


POINCARE = {
    "Q": ("1+63t+987t^2+925t^3", "(1+t)(1+25t)(1+37t)"),
    "R": ("1+315t+23667t^2+23353t^3", "(1+t)(1+121t)(1+193t)"),
    "S1": ("1+36t+438t^2+1924t^3+1521t^4", "(1+t)(1+9t)(1+13t)(1+13t)"),
    "S2": ("1+72t+1722t^2+14176t^3+12525t^4", "(1+t)(1+25t)(1+46t+501t^2)"),
    "S3": ("1+180t+10326t^2+195220t^3+185073t^4", "(1+t)(1+49t)(1+130t+3777t^2)"),
    "T": ("1+180t+10614t^2+207892t^3+197457t^4", "(1+t)(1+61t)(1+118t+3237t^2)"),
    "U": ("1+165t+10010t^2+265210t^3+2657589t^4+2402225t^5", "(1+t)(1+25t)(1+37t)(1+49t)(1+53t)"),
}

CODIM = {
    "Q": ("1+63t+1239t^2+10793t^3", "1+63t+1239t^2+10793t^3"),
    "R": ("1+315t+27447t^2+1181837t^3", "1+315t+27447t^2+1181837t^3"),
    "S1": ("1+36t+438t^2+2180t^3+4257t^4", "(1+11t)(1+25t+163t^2+387t^3)"),
    "S2": ("1+72t+1722t^2+16496t^3+64653t^4", "(1+23t)(1+49t+595t^2+2811t^3)"),
    "S3": ("1+180t+10974t^2+272420t^3+3034185t^4", "(1+71t)(1+109t+3235t^2+42735t^3)"),
    "T": ("1+180t+10614t^2+244628t^3+2336577t^4", "(1+59t)(1+121t+3475t^2+39603t^3)"),
    "U": ("1+165t+10010t^2+279290t^3+3658149t^4+23423905t^5",
          "1+165t+10010t^2+279290t^3+3658149t^4+23423905t^5"),
}

CENSUS = {
    "Q": {2: {"G(4,2,2)": 63, "A2": 336}},
    "R": {2: {"A2": 8400, "G(5,5,2)": 1008, "W2(Q,pm1)": 315}},
    "S1": {2: {"A1xA1": 54, "A2": 192}, 3: {"A1^3": 36, "A3": 144, "G(3,3,3)": 64}},
    "S2": {2: {"A1xA1": 216, "B2": 54, "A2(perp-A2)": 96, "A2(no-perp)": 576},
           3: {"A2xA1": 288, "A3": 864, "B3": 72, "G(3,3,3)": 256, "G(4,4,3)": 108}},
    "S3": {2: {"W2(Q,pm1)": 54, "A2": 3840, "A1xA1": 2160},
           3: {"W3(Q,pm1)": 180, "G(3,3,3)": 2560, "A3": 17280, "A2xA1": 11520}},
    "T": {2: {"A1xA1": 1350, "A2(perp-A2)": 600, "A2(no-perp)": 3600, "G(5,5,2)": 216},
          3: {"H3": 180, "A2xA1": 1800, "G(5,5,2)xA1": 1080, "G(5,5,3)": 864, "G(3,3,3)": 4000,
              "A3[4 A2(perp-A2)]": 900, "A3[4 A2(no-perp)]": 13500}},
    "U": {2: {"A2": 3520, "A1xA1": 2970},
          3: {"A3": 23760, "G(3,3,3)": 3520, "A2xA1": 31680, "A1^3": 2970},
          4: {"S1": 165, "G(3,3,4)": 7040, "A4": 38016, "G(3,3,3)xA1": 10560, "A3xA1": 23760}},
    "G334": {3: {"G(3,3,3)": 4, "A3": 27, "A2xA1": 18}},
    "G333": {2: {"A2": 12}},
}

# top-flat Moebius value and e-invariant of small fixtures
FIXTURES = {
    "A1^3": (1, 1), "A1xA2": (2, 2), "A3": (6, 6), "B3": (15, 15),
    "G333": (16, 20), "G443": (30, 42), "W3Q": (153, 525), "G334": (168, 240),
}

ORDERS = {"Q": 12096, "S1": 6912, "G333": 54, "G443": 96, "W3Q": 768, "W2Q": 32, "G334": 648}

FULL_SYSTEMS = {"R", "S2", "S3", "T", "U"}

# families checked against the closed-form products
FAMILY_CASES = [
    ("C2", "full", 2), ("C2", "full", 3), ("C2", "triv", 3),
    ("C3", "full", 2), ("C3", "full", 3), ("C3", "triv", 3),
    ("C4", "full", 2), ("C4", "full", 3), ("C4", "index2", 3), ("C4", "triv", 3),
    ("Q8", "full", 2), ("Q8", "full", 3), ("Q8", "pm1", 2), ("Q8", "pm1", 3), ("Q8", "pm1", 4),
]


def _suite(name):
    return FULL if name in FULL_SYSTEMS else FAST


def _records() -> list:
    out = []
    for s, (p, f) in POINCARE.items():
        out.append(Record(f"{s}.poincare", s, "poincare", p, f"Poincare table, row W({s})", _suite(s)))
        out.append(Record(f"{s}.poincare.factor", s, "poincare-factor", f,
                          f"Poincare table, factored row W({s})", _suite(s)))
    for s, (c, f) in CODIM.items():
        out.append(Record(f"{s}.codim", s, "codim", c, f"codimension table, row W({s})", _suite(s)))
        out.append(Record(f"{s}.codim.factor", s, "codim-factor", f,
                          f"codimension table, factored row W({s})", _suite(s)))
    for s, ranks in CENSUS.items():
        for d, row in ranks.items():
            for lab, n in row.items():
                out.append(Record(f"{s}.census.{d}.{lab}", s, "census-count", n,
                                  f"rank-{d} flat census of {s}", _suite(s), (d, lab)))
    for s, (mu, e) in FIXTURES.items():
        out.append(Record(f"{s}.mu", s, "mu", mu, f"worked example {s}: top Moebius value"))
        out.append(Record(f"{s}.e", s, "e", e, f"worked example {s}: elliptic count"))
    for s, o in ORDERS.items():
        out.append(Record(f"{s}.order", s, "order", o, f"group order of W({s}) by enumeration"))
    out.append(Record("S1.codim.enum", "S1", "codim-enum", CODIM["S1"][0],
                      "codimension table, row W(S1), by element enumeration"))
    out.append(Record("S2.codim.enum", "S2", "codim-enum", CODIM["S2"][0],
                      "codimension table, row W(S2), by element enumeration", FULL))
    from .groups import family_codim_poly, family_poincare_poly
    from .systems import gamma_group
    for g, dl, n in FAMILY_CASES:
        gg = gamma_group(g, dl)
        spec = f"family:{g}:{dl}:{n}"
        m, p = gg.order, len(gg.delta)
        if p > 1:
            out.append(Record(f"{spec}.poincare", spec, "poincare", str(family_poincare_poly(m, n)),
                              f"family product (1+t)prod(1+(1+km)t), m={m}"))
        out.append(Record(f"{spec}.codim", spec, "codim", str(family_codim_poly(m, p, n)),
                          f"family product for c_W, m={m}, |Delta|={p}"))
    out.append(Record("family:Q8:full:4.codim", "family:Q8:full:4", "codim-formula",
                      "(1+7t)(1+15t)(1+23t)(1+31t)", "family product for c_W, m=8, n=4"))
    out.append(Record("W2Q.rank2", "W2Q", "rank2", ("(1+t)(1+9t)", "1+10t+21t^2"),
                      "rank-2 closed form with N*=10, N=10, |W|=32"))
    out.append(Record("G552.rank2", "G552", "rank2", ("(1+t)(1+4t)", "1+5t+4t^2"),
                      "rank-2 closed form with N*=5, N=5, |W|=10"))
    return out


RECORDS = _records()
