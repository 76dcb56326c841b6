"""Walk through the bilinear system l=(1,1), d=(1,1), s=(1,1,2).

Prints the determinantal vectors, the boxes, the complex and matrix at a few
vectors, and checks that every formula yields the same determinant up to sign.
"""
import argparse

from mhres import critical_degree, det_boxes, enumerate_det_vectors, make_complex, resultant_degrees, validate_system
from mhres.complex import format_blocks
from mhres.matrices import assemble_matrix
from mhres.verify import determinant, random_assignment, specialize


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--show", default="2,0;3,-1", help="vectors whose matrices are printed, ';'-separated")
    args = ap.parse_args(argv)

    sys_ = validate_system((1, 1), (1, 1), (1, 1, 2))
    degs, total = resultant_degrees(sys_)
    print(f"rho = {critical_degree(sys_)}, degrees {degs}, total {total}")

    vecs = enumerate_det_vectors(sys_)
    print(f"{len(vecs)} determinantal vectors:")
    for m, dim in vecs:
        print(f"  m={m} dim={dim}  {format_blocks(make_complex(sys_, m))}")
    for box in det_boxes(sys_):
        print("box", box.intervals())

    for item in args.show.split(";"):
        m = tuple(int(x) for x in item.split(","))
        bm = assemble_matrix(sys_, m)
        print(f"\nmatrix at m={m} ({bm.shape[0]}x{bm.shape[1]}):")
        for row in bm.dense():
            print("  " + "  ".join(str(e) if e else "0" for e in row))

    assign = random_assignment(sys_, args.seed)
    dets = {m: determinant(specialize(assemble_matrix(sys_, m), assign)) for m, _ in vecs}
    ref = abs(dets[vecs[0][0]])
    print(f"\n|det| = {float(ref):.6g} at seed {args.seed}; all equal: {all(abs(d) == ref for d in dets.values())}")


if __name__ == "__main__":
    main()
