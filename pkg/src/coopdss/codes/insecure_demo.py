"""Deliberately insecure toy scheme: a negative control for the verifiers.

Three nodes over GF(5), M = 2, Ms = 1: node 1 stores the secret symbol in
the clear, node 2 the random symbol, node 3 their sum.  Any two nodes
reconstruct; a single failure is repaired by reading both survivors
(d = 2, t = 1, beta = 1).  Eavesdropping node 1 leaks the whole secret;
any verifier that fails to flag it is broken.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from ..field import Matrix, prime_field
from .base import (
    NodeContent,
    ObservationMatrix,
    ParameterError,
    RepairTranscript,
    Scheme,
    SchemeParams,
)


class InsecureDemoScheme(Scheme):

    name = "insecure-demo"

    _rows = {1: (1, 0), 2: (0, 1), 3: (1, 1)}  # (u, r) coefficients per node

    def __init__(self, params: SchemeParams):
        if (params.n, params.k, params.d, params.t) != (3, 2, 2, 1):
            raise ParameterError(f"{self.name} is fixed at n=3,k=2,d=2,t=1")
        if (params.l1, params.l2) != (1, 0):
            raise ParameterError(f"{self.name} models a single storage eavesdropper")
        self.params = params
        self.field = prime_field(5)
        self.file_size = 2
        self.secure_size = 1
        self.alpha = 1
        self.beta = 1
        self.beta_prime = 1
        self.layout = (("shares", 1),)

    def encode(self, u: Sequence[int], r: Sequence[int]) -> list[NodeContent]:
        self._check_inputs(u, r)
        f = self.field
        vals = {i: f.add(f.mul(cu, u[0]), f.mul(cr, r[0]))
                for i, (cu, cr) in self._rows.items()}
        return [NodeContent(i, (vals[i],), self.layout) for i in (1, 2, 3)]

    def reconstruct(self, contents: Sequence[NodeContent]) -> tuple[int, ...]:
        by_id = {c.node_id: c for c in contents}
        if len(by_id) < 2:
            raise ParameterError("need k=2 nodes")
        ids = sorted(by_id)[:2]
        m = Matrix(self.field, [list(self._rows[i]) for i in ids])
        u0, _ = m.solve([by_id[i].symbols[0] for i in ids])
        return (u0,)

    def cooperative_repair(self, failed: Iterable[int],
                           survivors: Mapping[int, NodeContent],
                           helpers: Sequence[int] | None = None) -> RepairTranscript:
        f = self.field
        failed = self._validate_failed(failed, survivors)
        helpers = self._pick_helpers(failed, survivors, helpers)
        (i,) = tuple(failed)
        live = {(h, i): (survivors[h].symbols[0],) for h in helpers}
        m = Matrix(f, [list(self._rows[h]) for h in helpers])
        u0, r0 = m.solve([survivors[h].symbols[0] for h in helpers])
        cu, cr = self._rows[i]
        val = f.add(f.mul(cu, u0), f.mul(cr, r0))
        return RepairTranscript(failed=failed, helpers=helpers, live_transfers=live,
                                coop_transfers={},
                                results=(NodeContent(i, (val,), self.layout),))

    def observation_matrix(self, e1: Iterable[int], e2: Iterable[int],
                           transcripts: Sequence[RepairTranscript] = ()) -> ObservationMatrix:
        e1, e2 = self._validate_eaves(e1, e2, transcripts)
        u_rows, r_rows, labels = [], [], []
        for e in e1 + e2:
            cu, cr = self._rows[e]
            u_rows.append([cu])
            r_rows.append([cr])
            labels.append(("stored", e, 0))
        for t_idx, tr in enumerate(transcripts):
            for i in sorted(tr.failed & set(e2)):
                for h in tr.helpers:
                    cu, cr = self._rows[h]
                    u_rows.append([cu])
                    r_rows.append([cr])
                    labels.append(("live", t_idx, h, i))
        a_u = Matrix(self.field, u_rows, ncols=1)
        a_r = Matrix(self.field, r_rows, ncols=1)
        return ObservationMatrix(a_u=a_u, a_r=a_r, labels=tuple(labels))
