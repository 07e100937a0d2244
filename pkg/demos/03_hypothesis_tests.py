# ANOVA and paired t tests on growth rates
#
# The t and F distributions are evaluated from the regularized incomplete
# beta function, so no scipy is needed at runtime.

import numpy as np

from bankperf import f_sf, one_way_anova, paired_t_test, t_cdf, t_quantile

# In[1]: distribution functions

print("P(T <= 1.96), df=115:", round(t_cdf(1.96, 115), 6))
print("97.5% quantile, df=115:", round(t_quantile(0.975, 115), 6))
print("P(F >= 3), df=(2, 345):", round(f_sf(3.0, 2, 345), 6))

# In[2]: three samples with one shifted mean

rng = np.random.default_rng(0)
a, b, c = rng.normal(0, 1, 40), rng.normal(0, 1, 40), rng.normal(0.6, 1, 40)
r = one_way_anova([a, b, c])
print(f"F={r.f:.4f} df=({r.df_between}, {r.df_within}) p={r.p:.4g}")

# In[3]: paired tests align by key when given dicts

keys = [(f"bank{i}", 2012 + j) for i in range(10) for j in range(3)]
roa_growth = {k: v for k, v in zip(keys, rng.normal(0.05, 0.2, 30))}
tsr_growth = {k: v for k, v in zip(reversed(keys), rng.normal(0.0, 0.2, 30))}
p = paired_t_test(roa_growth, tsr_growth)
print(f"t={p.t:.4f} df={p.df} p={p.p:.4f} CI=({p.ci_low:.4f}, {p.ci_high:.4f})")
