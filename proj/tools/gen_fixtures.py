"""Regenerates the JSON fixture registry under fixtures/."""

import itertools
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def group_algebra(name, p, table, labels):
    n = len(table)
    mul = [[a, b, table[a][b], 1] for a in range(n) for b in range(n)]
    unit = [1 if i == 0 else 0 for i in range(n)]
    return {"name": name, "char": p, "dim": n, "basis": labels, "unit": unit, "mul": mul, "sform": unit}


def cyclic(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def s3():
    perms = list(itertools.permutations(range(3)))
    table = [[perms.index(tuple(perms[i][perms[j][x]] for x in range(3))) for j in range(6)] for i in range(6)]
    return perms, table


def truncated(name, p, n, sform_index):
    mul = [[i, j, i + j, 1] for i in range(n) for j in range(n) if i + j < n]
    labels = ["1", "x"] + [f"x^{i}" for i in range(2, n)]
    return {
        "name": name, "char": p, "dim": n, "basis": labels[:n],
        "unit": [1] + [0] * (n - 1), "mul": mul,
        "sform": [1 if i == sform_index else 0 for i in range(n)],
    }


def left_mult(table, g):
    n = len(table)
    return [[1 if table[g][c] == r else 0 for c in range(n)] for r in range(n)]


def right_mult(table, g):
    n = len(table)
    return [[1 if table[c][g] == r else 0 for c in range(n)] for r in range(n)]


def matmul(a, b, p):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) % p for j in range(len(b[0]))] for i in range(len(a))]


def restriction_bimodule(name, p, table, embed, a_file, b_file):
    """The group algebra of G as a (kG, kH)-bimodule; basis of kG (x) kH^0 is g (x) h at g * |H| + h."""
    action = []
    for g in range(len(table)):
        for h in embed:
            action.append(matmul(left_mult(table, g), right_mult(table, h), p))
    return {"name": name, "left_algebra": a_file, "right_algebra": b_file, "dim": len(table), "action": action}


def trivial_module(name, a_file, n):
    return {"name": name, "algebra": a_file, "dim": 1, "action": [[[1]] for _ in range(n)]}


def write(rel, obj):
    path = ROOT / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj) + "\n")


def main():
    write("algebras/a2.json", truncated("GF(2)[x]/(x^2)", 2, 2, 1))
    write("algebras/a2_bad_form.json", truncated("GF(2)[x]/(x^2) with coefficient-of-1 form", 2, 2, 0))
    write("algebras/a4.json", truncated("GF(2)[x]/(x^4)", 2, 4, 3))
    write("algebras/gf2_c2.json", group_algebra("GF(2)C2", 2, cyclic(2), ["1", "h"]))
    write("algebras/gf2_c4.json", group_algebra("GF(2)C4", 2, cyclic(4), ["1", "g", "g^2", "g^3"]))
    write("algebras/gf3_c3.json", group_algebra("GF(3)C3", 3, cyclic(3), ["1", "c", "c^2"]))
    write("algebras/gf3_c2.json", group_algebra("GF(3)C2", 3, cyclic(2), ["1", "t"]))
    perms, table = s3()
    labels = ["1" if p == (0, 1, 2) else "".join(map(str, p)) for p in perms]
    write("algebras/gf3_s3.json", group_algebra("GF(3)S3", 3, table, labels))

    write("bimodules/c4_over_c2.json",
          restriction_bimodule("GF(2)C4 as (C4, C2)-bimodule", 2, cyclic(4), [0, 2],
                               "../algebras/gf2_c4.json", "../algebras/gf2_c2.json"))
    c = perms.index((1, 2, 0))
    c2 = table[c][c]
    write("bimodules/s3_over_c3.json",
          restriction_bimodule("GF(3)S3 as (S3, C3)-bimodule", 3, table, [0, c, c2],
                               "../algebras/gf3_s3.json", "../algebras/gf3_c3.json"))

    for alg, n in [("a2", 2), ("gf2_c2", 2), ("gf2_c4", 4), ("gf3_c3", 3), ("gf3_s3", 6), ("gf3_c2", 2)]:
        mod = trivial_module(f"trivial module over {alg}", f"../algebras/{alg}.json", n)
        if alg == "a2":
            mod["action"] = [[[1]], [[0]]]
        write(f"modules/{alg}_trivial.json", mod)

    fixtures = {
        "a2-regular": {"A": "algebras/a2.json", "B": "algebras/a2.json", "M": "regular",
                       "V": "modules/a2_trivial.json", "W": "modules/a2_trivial.json"},
        "c4-c2": {"A": "algebras/gf2_c4.json", "B": "algebras/gf2_c2.json", "M": "bimodules/c4_over_c2.json",
                  "V": "modules/gf2_c2_trivial.json", "W": "regular"},
        "s3-c3": {"A": "algebras/gf3_s3.json", "B": "algebras/gf3_c3.json", "M": "bimodules/s3_over_c3.json",
                  "V": "modules/gf3_c3_trivial.json", "W": "regular"},
        "c3-regular": {"A": "algebras/gf3_c3.json", "B": "algebras/gf3_c3.json", "M": "regular",
                       "V": "modules/gf3_c3_trivial.json", "W": "modules/gf3_c3_trivial.json"},
        "c2-gf3-semisimple": {"A": "algebras/gf3_c2.json", "B": "algebras/gf3_c2.json", "M": "regular",
                              "V": "modules/gf3_c2_trivial.json", "W": "modules/gf3_c2_trivial.json"},
    }
    for name, f in fixtures.items():
        f = dict(f, name=name, degrees=[-2, 3])
        write(f"{name}.json", f)


if __name__ == "__main__":
    main()
