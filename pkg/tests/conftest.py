import pytest

from zsmatch.catalog import matched_pairs, odometer_graphs


@pytest.fixture(scope="session")
def pairs():
    return matched_pairs()


@pytest.fixture(scope="session")
def graphs():
    return odometer_graphs()


def simplicial_identities(face, degen, top):
    """Yield a description of every failing identity between the face
    matrices ``face(k, i): X_k -> X_{k-1}`` and degeneracies
    ``degen(k, i): X_k -> X_{k+1}`` for ``k <= top``."""
    for k in range(2, top + 1):
        for j in range(k + 1):
            for i in range(j):
                if face(k - 1, i) @ face(k, j) != face(k - 1, j - 1) @ face(k, i):
                    yield ("dd", k, i, j)
    for k in range(0, top):
        for j in range(k + 1):
            for i in range(j + 1):
                if degen(k + 1, i) @ degen(k, j) != degen(k + 1, j + 1) @ degen(k, i):
                    yield ("ss", k, i, j)
    for k in range(0, top):
        ident = None
        for j in range(k + 1):
            for i in range(k + 2):
                lhs = face(k + 1, i) @ degen(k, j)
                if i < j:
                    rhs = degen(k - 1, j - 1) @ face(k, i)
                elif i in (j, j + 1):
                    if ident is None:
                        from zsmatch.linalg import IntMatrix
                        ident = IntMatrix.identity(lhs.shape[1])
                    rhs = ident
                else:
                    rhs = degen(k - 1, j) @ face(k, i - 1)
                if lhs != rhs:
                    yield ("ds", k, i, j)
