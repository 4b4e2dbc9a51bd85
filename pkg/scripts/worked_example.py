#!/usr/bin/env python3
"""Walk a 3x3 symmetric matrix through the whole exact pipeline.

Prints the characteristic polynomial, the exact roots, the adjugate-column
eigenvectors with their residual checks, mutual orthogonality, and the
inertia read off the minor sequence.
"""

from secular import (
    Pencil,
    RatMatrix,
    adjugate_eigenvector,
    char_roots,
    inertia,
)

A = RatMatrix.from_rows([[1, -1, 0], [-1, 2, 1], [0, 1, 1]])


def main() -> None:
    pencil = Pencil.classical(A)
    poly = pencil.char_poly()
    print("matrix:")
    for row in A.to_rows():
        print("   ", [str(v) for v in row])
    print("det(A - xI) =", poly.to_string())
    roots = char_roots(pencil)
    print("roots:", [(str(r.value), r.multiplicity) for r in roots])
    vectors = []
    for root in roots:
        v = adjugate_eigenvector(pencil, root)
        vectors.append(v)
        residual = (A - RatMatrix.identity(3).scale(root.value)).apply(v)
        print(f"root {root.value}: eigenvector {[str(x) for x in v]},"
              f" residual {[str(x) for x in residual]}")
    for i in range(3):
        for j in range(i + 1, 3):
            dot = sum(a * b for a, b in zip(vectors[i], vectors[j]))
            print(f"<v{i + 1}, v{j + 1}> = {dot}")
    rep = inertia(A)
    print("inertia:", rep.signature, "via", rep.method)


if __name__ == "__main__":
    main()
