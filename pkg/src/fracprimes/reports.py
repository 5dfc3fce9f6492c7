"""CSV emitters and parsers for tabular reports.

Floats are written with ``repr`` so every row parses back to an equal record.
"""
from __future__ import annotations

import csv
import io
from typing import Iterable, List

from .census import CensusRecord, GaussianTwinPair, PrimeSequence
from .frac_parts import FracPartSample

CENSUS_COLUMNS = ("x", "weighted_sum", "predicted", "residual", "distinct", "multiplicity")
FRAC_COLUMNS = ("n", "p", "frac", "bound", "ratio")
TWIN_COLUMNS = ("n", "p", "a1", "b1", "a2", "b2")
SEQUENCE_COLUMNS = ("n", "p")


def _write(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buf.getvalue()


def _read(text: str, columns) -> List[dict]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != tuple(columns):
        raise ValueError(f"expected columns {columns}, got {reader.fieldnames}")
    return list(reader)


def census_to_csv(records: Iterable[CensusRecord]) -> str:
    return _write(CENSUS_COLUMNS, ((r.x, repr(r.weighted_sum), repr(r.predicted),
                                    repr(r.residual), r.distinct_prime_count,
                                    r.multiplicity_count) for r in records))


def census_from_csv(text: str) -> List[CensusRecord]:
    return [CensusRecord(int(d["x"]), float(d["weighted_sum"]), float(d["predicted"]),
                         float(d["residual"]), int(d["distinct"]), int(d["multiplicity"]))
            for d in _read(text, CENSUS_COLUMNS)]


def fracparts_to_csv(samples: Iterable[FracPartSample]) -> str:
    return _write(FRAC_COLUMNS, ((s.n, s.p, repr(s.frac), repr(s.bound), repr(s.ratio))
                                 for s in samples))


def fracparts_from_csv(text: str) -> List[FracPartSample]:
    # ratio is derived from frac and bound, so it is not read back.
    return [FracPartSample(int(d["n"]), int(d["p"]), float(d["frac"]), float(d["bound"]))
            for d in _read(text, FRAC_COLUMNS)]


def twins_to_csv(pairs: Iterable[GaussianTwinPair]) -> str:
    return _write(TWIN_COLUMNS, ((t.n, t.p, *t.pair[0], *t.pair[1]) for t in pairs))


def twins_from_csv(text: str) -> List[GaussianTwinPair]:
    return [GaussianTwinPair(int(d["n"]), int(d["p"]),
                             ((int(d["a1"]), int(d["b1"])), (int(d["a2"]), int(d["b2"]))))
            for d in _read(text, TWIN_COLUMNS)]


def sequence_to_csv(seq: PrimeSequence) -> str:
    return _write(SEQUENCE_COLUMNS, zip(seq.indices, seq.primes))


def sequence_from_csv(text: str) -> List[tuple]:
    return [(int(d["n"]), int(d["p"])) for d in _read(text, SEQUENCE_COLUMNS)]
