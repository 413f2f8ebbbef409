"""Benchmark table lattices and the published L-infinity errors for each cell.

``PUBLISHED[table_id][(delta, t, N)]`` is the reported error; the lattice of
a table is exactly the set of its keys.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class TableSetup:
    table_id: int
    sigma1: float
    sigma2: float
    deltas: tuple
    times: tuple
    orders: tuple

    def cells(self):
        """``(delta, t, N)`` in output order: time, then delta, then N."""
        return [(d, t, n) for t in self.times for d in self.deltas for n in self.orders]


TABLES = {
    1: TableSetup(1, 0.1, -0.0025, (1, 2, 4, 8), (0.1, 0.2, 0.3, 0.4, 0.5), (4, 6)),
    2: TableSetup(2, 1.0, 1.0, (1, 2, 4, 8), (0.2, 0.4, 0.6, 0.8, 1.0), (4, 6, 8, 10, 12, 14, 16)),
    3: TableSetup(3, 1.0, 0.0, (1, 2, 4), (0.001, 0.5, 1.0, 1.5, 2.0, 2.5), (4, 6, 8, 10)),
    4: TableSetup(4, 1.0, 1.0, (1, 2, 4, 8), (0.3, 0.9), (4, 8, 16)),
}


def _rows(setup, values):
    out = {}
    for t, block in zip(setup.times, values):
        for d, row in zip(setup.deltas, block):
            for n, v in zip(setup.orders, row):
                out[(d, t, n)] = v
    return out


PUBLISHED = {
    1: _rows(TABLES[1], [
        [[9.5696e-13, 5.5511e-17], [1.4242e-12, 4.5519e-15], [9.9620e-13, 1.1102e-16], [4.7429e-13, 1.1102e-16]],
        [[1.0758e-12, 5.5511e-17], [1.6033e-12, 2.2204e-16], [1.1265e-12, 1.1102e-16], [5.4279e-13, 1.1102e-16]],
        [[1.1146e-12, 5.5511e-17], [1.6627e-12, 1.1102e-16], [1.1720e-12, 1.1102e-16], [5.6999e-13, 1.1102e-16]],
        [[1.1343e-12, 5.5511e-17], [1.6921e-12, 1.1102e-16], [1.1960e-12, 1.1102e-16], [5.8642e-13, 1.1102e-16]],
        [[1.1478e-12, 5.5511e-17], [1.7099e-12, 1.1102e-16], [1.2114e-12, 1.1102e-16], [5.9841e-13, 1.1102e-16]],
    ]),
    2: _rows(TABLES[2], [
        [[1.094e-07, 1.363e-10, 1.665e-13, 2.220e-16, 1.110e-16, 1.110e-16, 1.110e-16],
         [1.430e-07, 2.267e-10, 3.968e-13, 8.882e-16, 1.110e-16, 1.110e-16, 2.220e-16],
         [1.722e-07, 1.145e-09, 6.861e-12, 3.775e-14, 2.220e-16, 1.110e-16, 1.110e-16],
         [2.574e-06, 8.626e-08, 2.139e-09, 4.481e-11, 8.373e-13, 1.421e-14, 2.220e-16]],
        [[1.008e-07, 2.416e-10, 6.424e-13, 1.499e-15, 1.110e-16, 1.110e-16, 1.110e-16],
         [4.296e-07, 3.601e-09, 2.289e-11, 1.376e-13, 6.661e-16, 2.220e-16, 2.220e-16],
         [3.209e-06, 1.508e-07, 4.579e-09, 1.098e-10, 2.264e-12, 4.152e-14, 6.661e-16],
         [5.131e-05, 3.319e-06, 7.566e-08, 1.537e-08, 1.609e-09, 9.949e-11, 4.360e-12]],
        [[3.683e-07, 2.995e-09, 1.816e-11, 9.320e-14, 4.441e-16, 1.110e-16, 1.110e-16],
         [5.567e-07, 1.280e-08, 4.287e-10, 1.083e-11, 2.0140e-13, 3.220e-15, 2.220e-16],
         [2.722e-05, 2.085e-06, 9.336e-08, 2.570e-09, 3.230e-11, 3.884e-12, 2.531e-13],
         [5.763e-05, 1.164e-05, 3.690e-06, 3.129e-07, 1.654e-08, 5.834e-09, 6.217e-10]],
        [[9.945e-07, 1.384e-08, 1.356e-10, 1.047e-12, 6.939e-15, 1.110e-16, 1.110e-16],
         [3.882e-06, 2.548e-07, 1.141e-08, 3.577e-10, 8.942e-12, 1.873e-13, 3.331e-15],
         [6.466e-05, 5.138e-06, 1.557e-07, 3.309e-08, 3.627e-09, 2.205e-10, 7.847e-12],
         [8.497e-05, 5.466e-05, 7.401e-06, 1.286e-06, 4.016e-07, 1.778e-08, 8.669e-09]],
        [[1.811e-06, 3.257e-08, 3.246e-10, 2.000e-12, 6.017e-14, 1.499e-15, 1.110e-16],
         [1.296e-05, 1.245e-06, 6.765e-08, 2.454e-09, 6.029e-11, 7.717e-13, 3.853e-14],
         [8.701e-05, 5.130e-06, 1.653e-06, 2.581e-07, 1.563e-08, 6.608e-10, 1.886e-10],
         [1.431e-04, 8.879e-05, 9.984e-06, 6.545e-06, 4.035e-07, 2.768e-07, 4.092e-08]],
    ]),
    3: _rows(TABLES[3], [
        [[2.7715e-09, 1.1814e-11, 3.5527e-14, 1.1102e-16],
         [5.8538e-09, 4.3071e-11, 1.9740e-13, 7.7716e-16],
         [5.8482e-09, 6.1648e-11, 4.0001e-13, 1.7764e-15]],
        [[1.1039e-07, 1.3468e-10, 1.5776e-13, 2.2204e-16],
         [1.9814e-07, 3.6723e-10, 7.2031e-13, 1.5543e-15],
         [1.9663e-07, 4.7425e-10, 1.3300e-12, 3.7748e-15]],
        [[1.1644e-07, 1.4060e-10, 1.6886e-13, 2.2204e-16],
         [1.8895e-07, 3.3341e-10, 6.5703e-13, 1.4433e-15],
         [1.8534e-07, 4.4473e-10, 1.2240e-12, 3.6637e-15]],
        [[1.1146e-07, 1.3011e-10, 1.5110e-13, 2.2204e-16],
         [1.7174e-07, 2.9088e-10, 5.3968e-13, 1.1102e-15],
         [1.6998e-07, 4.0300e-10, 1.0719e-12, 3.1086e-15]],
        [[1.0571e-07, 1.1338e-10, 2.2149e-13, 6.1062e-16],
         [1.4803e-07, 2.2619e-10, 3.9735e-13, 7.7716e-15],
         [1.5113e-07, 3.4518e-10, 8.9762e-13, 2.5535e-15]],
        [[9.9698e-08, 2.3955e-10, 1.2607e-12, 5.5511e-15],
         [1.1989e-07, 1.7146e-10, 3.2796e-13, 6.6613e-16],
         [1.2930e-07, 2.7381e-10, 6.8279e-13, 1.9984e-15]],
    ]),
    4: _rows(TABLES[4], [
        [[1.096e-07, 1.503e-13, 1.110e-16],
         [1.665e-07, 3.332e-12, 2.220e-16],
         [4.247e-07, 1.765e-10, 1.110e-16],
         [2.133e-05, 4.988e-08, 7.383e-14]],
        [[1.400e-06, 2.494e-10, 1.110e-16],
         [7.276e-06, 3.124e-08, 8.549e-15],
         [7.917e-05, 5.254e-07, 2.268e-11],
         [1.058e-04, 4.914e-06, 2.730e-08]],
    ]),
}
