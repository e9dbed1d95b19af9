"""Tour 5: ring description files and the command-line front end.

Rings, frames, maps, and derivations serialize to a JSON document format.
Emission is canonical (sorted keys, compact separators), so documents and
reports are byte-stable: same input and seed, same bytes out.  The CLI wraps
every library capability with a fixed exit-code contract:

    0 = checks pass and results complete      1 = a property fails (witnessed)
    2 = usage or parse error                  3 = budget exhausted, partial
    4 = internal inconsistency (bug)
"""

import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np

from gammaring import (MapPair, build_matrix_ring, canonical_frame, document_dict,
                       emit_grdf, make_group, trivial_ring)

tmp = Path(tempfile.mkdtemp(prefix="gammaring-demo-"))

ring = build_matrix_ring(2, 2, 2)
gm = ring.m_group
frame = canonical_frame(ring, gm.index_of((1, 0, 0, 0)),
                        ring.gamma_group.index_of((1, 0, 0, 1)),
                        gm.index_of((1, 0, 0, 1)))
ident = MapPair(ring, ring, np.arange(16), np.arange(16))

matrix_doc = tmp / "matrix.json"
matrix_doc.write_text(emit_grdf(document_dict(ring, frames=[frame], maps=[ident])))
print(f"matrix-ring document ({matrix_doc.stat().st_size} bytes):")
print(" ", matrix_doc.read_text()[:120], "...")

trivial_doc = tmp / "trivial.json"
trivial_doc.write_text(emit_grdf(document_dict(
    trivial_ring(make_group([4]), make_group([2])))))


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "gammaring", *args],
                          capture_output=True, text=True)
    first = proc.stdout.splitlines()[:6]
    print(f"$ gammaring {' '.join(args)}   -> exit {proc.returncode}")
    for line in first:
        print(f"    {line}")
    return proc.returncode


print()
run("axioms", "--input", str(matrix_doc))
print()
run("conditions", "--input", str(matrix_doc))
print()
run("theorem", "--input", str(matrix_doc))
print()
code = run("search-iso", "--input", str(trivial_doc), "--require-additive")
print(f"    (exit {code}: the all-zero-product ring has non-additive multiplicative maps)")
print()
run("hunt", "--input", str(trivial_doc), "--input", str(matrix_doc))
