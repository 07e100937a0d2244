# Full report on the bundled synthetic panel
#
# 29 banks (23 conventional, 6 islamic) over 2010-2015. The first year only
# supplies base values, so every metric covers 2011-2015 and has 116 growth
# observations per metric.

from bankperf import analyse_panel, render_report
from bankperf.synthetic import load_bundled_panel

panel = load_bundled_panel()
bundle = analyse_panel(panel)

# In[1]:

files = render_report(bundle, "markdown")
print(files["table1_descriptives.md"])
print(files["table4_tfp_trend.md"])

# In[2]:

print(files["table5_anova.md"])
print(files["table6_paired_t.md"])
print(files["verdicts.md"])

# The same output from the shell:
#   bankperf report --panel src/bankperf/data/synthetic_banks.csv \
#       --schema src/bankperf/data/schema.conf --out report/ --format markdown --format csv
