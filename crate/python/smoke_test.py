#!/usr/bin/env python3
"""Smoke test for the simplicia_py extension module.

Build the module first, then run this script:

    cargo build -p simplicia-py --release
    python3 python/smoke_test.py
"""

import ctypes
import json
import pathlib
import shutil
import sys
import sysconfig
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    names = ["libsimplicia_py.so", "simplicia_py.dll", "libsimplicia_py.dylib"]
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in names
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p simplicia-py")
    staging = pathlib.Path(tempfile.mkdtemp(prefix="simplicia_py_"))
    ext = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy2(built, staging / f"simplicia_py{ext}")
    sys.path.insert(0, str(staging))
    import simplicia_py

    return simplicia_py


def main():
    sp = load_module()
    checks = 0

    def ok(name, condition):
        nonlocal checks
        assert condition, name
        checks += 1
        print(f"ok {checks:2d} - {name}")

    # Seeds and invariants.
    s2 = sp.Complex.minimal("S2")
    t2 = sp.Complex.minimal("T2")
    rp2 = sp.Complex.minimal("RP2")
    s3 = sp.Complex.minimal("S3")
    ok("sphere f-vector", s2.f_vector() == [4, 6, 4])
    ok("torus f-vector", t2.f_vector() == [7, 21, 14])
    ok("projective plane f-vector", rp2.f_vector() == [6, 15, 10])
    ok("3-sphere euler characteristic", s3.euler_characteristic() == 0)
    ok("all seeds are manifolds",
       all(c.is_manifold() for c in (s2, t2, rp2, s3)))
    ok("betti numbers", rp2.betti_gf2() == [1, 1, 1] and s3.betti_gf2() == [1, 0, 0, 1])
    ok("orientability", s2.is_orientable() and not rp2.is_orientable())
    ok("classification", t2.classify() == (True, 1, "T2#1"))
    ok("edge link is two points", s2.link([0, 1]).f_vector() == [2])

    # Pachner moves and walks.
    moves = s2.enumerate_moves()
    ok("sphere admits only 1-3 moves",
       len(moves) == 4 and all(kind == "1-3" for kind, _ in moves))
    grown = s2.apply_move("1-3", [0, 1, 2])
    ok("1-3 move delta", grown.f_vector() == [5, 9, 6])
    walked, steps = t2.pachner_walk(steps=60, max_vertices=24, seed=11)
    ok("walk preserves torus invariants",
       steps == 60 and walked.euler_characteristic() == 0 and walked.is_orientable())
    ok("walk respects the vertex cap", walked.vertex_count <= 24)

    # Surgery and classification arithmetic.
    genus2 = sp.build_surface(True, 2, seed=3)
    ok("genus-2 surface", genus2.classify() == (True, 2, "T2#2"))
    klein = sp.build_surface(False, 2, seed=3)
    ok("Klein bottle euler characteristic", klein.euler_characteristic() == 0)
    summed = t2.connected_sum(rp2, [0, 1, 3], [0, 1, 3])
    ok("connected sum additivity", summed.euler_characteristic() == -1)
    ok("T2 # RP2 has three crosscaps", summed.classify() == (False, 3, "RP2#3"))

    # Subdivision schemes.
    bary = s2.barycentric_subdivide()
    ok("barycentric counts", bary.f_vector() == [14, 36, 24])
    graded = rp2.graded_stellar(16, seed=5)
    ok("graded subdivision hits the target",
       graded.vertex_count == 16 and graded.classify() == (False, 1, "RP2#1"))
    top = s2.top_stellar(1.0, seed=5)
    ok("full top subdivision triples facets", len(top.top_faces()) == 12)

    # Isomorphism and hashing.
    shuffled = t2.permuted([3, 5, 0, 6, 2, 4, 1])
    ok("relabeling preserves the digest", shuffled.wl_digest() == t2.wl_digest())
    ok("relabeled complexes are isomorphic", sp.are_isomorphic(t2, shuffled))
    ok("different surfaces are not isomorphic", not s2.is_isomorphic_to(rp2))

    # Representations and encodings.
    dual = s2.graph("dual")
    ok("dual graph of the sphere is K4",
       dual.node_count == 4 and len(dual.edges) == 6)
    hasse = s2.graph("hasse")
    ok("hasse counts", hasse.node_count == 14 and len(hasse.edges) == 24)
    ok("hasse degrees", sorted(hasse.degrees())[0] >= 2)
    tri = sp.Complex.from_top_faces([[0, 1, 2]], 2)
    rwpe = tri.graph("skeleton").encode_rwpe(3)
    ok("rwpe matches the K3 hand value",
       all(abs(a - b) < 1e-12 for a, b in zip(rwpe[0], [0.0, 0.5, 0.25])))
    mc = dual.encode_moment_curve(2)
    ok("moment curve endpoints",
       mc[0] == [0.0] * 5 and mc[-1] == [1.0] * 5)
    r1 = dual.encode_random(8, seed=2)
    r2 = dual.encode_random(8, seed=2)
    ok("random features are seeded", r1 == r2 and len(r1[0]) == 8)

    # Dataset helpers over JSONL.
    lines = "".join(
        sp.record_line(c, rid, label) + "\n"
        for c, rid, label in [(s2, "s2:0", "S2"), (t2, "t2:0", "T2#1"), (rp2, "rp2:0", "RP2#1")]
    )
    ok("dataset validates", sp.validate_dataset(lines) == 3)
    balanced, report = sp.balance_dataset(
        lines, target=5, max_vertices=24, seed=9, classes=["RP2#2"]
    )
    report = json.loads(report)
    ok("balancing reaches its targets", not report["shortfalls"])
    ok("balanced classes have five members each",
       all(v == 5 for v in report["per_class"].values()))
    kept, dedup_report = sp.deduplicate_dataset(balanced + balanced.rstrip("\n") + "\n", 5)
    ok("dedup is a fixpoint plus planted duplicates",
       len(kept.splitlines()) == len(balanced.splitlines()))
    tagged = sp.split_dataset(balanced, 0.6, 0.2, 0.2, seed=4)
    train = "".join(l + "\n" for l in tagged.splitlines() if '"split":"train"' in l)
    test = "".join(l + "\n" for l in tagged.splitlines() if '"split":"test"' in l)
    ok("ec baseline is perfect on surfaces",
       sp.ec_baseline(train, test) == 1.0)

    print(f"\nall {checks} smoke checks passed")


if __name__ == "__main__":
    main()
