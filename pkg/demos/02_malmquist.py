# Malmquist TFP change between two years
#
# Build a small panel in which every bank doubles its output with the same
# inputs, then a second one where only the laggard catches up.

import numpy as np

from bankperf import BankYearRecord, PanelDataset, SchemaConfig, malmquist_indices

schema = SchemaConfig(("deposits",), ("loans",))


def panel(outputs_by_year):
    recs = []
    for t, outs in enumerate(outputs_by_year):
        for i, y in enumerate(outs):
            recs.append(BankYearRecord(f"bank{i}", 2020 + t, "all", (10.0,), (y,), 1.0, 100.0, 5.0, 0.2))
    return PanelDataset.from_records(recs, schema)


def show(p):
    print(f"{'bank':6} {'effch':>8} {'techch':>8} {'tfpch':>8} {'pech':>8} {'sech':>8}")
    for r in malmquist_indices(p, 2020):
        print(f"{r.bank_id:6} {r.effch:8.4f} {r.techch:8.4f} {r.tfpch:8.4f} {r.pech:8.4f} {r.sech:8.4f}")


# In[1]: everyone doubles, so the frontier shifts and relative positions hold

show(panel([[4.0, 8.0, 6.0], [8.0, 16.0, 12.0]]))

# In[2]: the frontier stays put and bank0 moves up to it

show(panel([[4.0, 8.0, 6.0], [8.0, 8.0, 6.0]]))

# tfpch always equals effch * techch, and effch equals pech * sech.
recs = malmquist_indices(panel([[4.0, 8.0, 6.0], [5.0, 9.0, 7.5]]), 2020)
print(max(abs(r.effch * r.techch - r.tfpch) for r in recs))
print(np.prod([r.tfpch for r in recs]) ** (1 / 3))
