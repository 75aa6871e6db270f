"""
统计检验：F 分布、双因素方差分析与 McNemar 成对比较。
"""

from .distributions import reg_inc_beta, f_cdf, f_sf, f_critical
from .anova import two_way_anova
from .mcnemar import mcnemar_pair, pairwise_mcnemar
from .tables import anova_to_rows, mcnemar_to_rows, means_to_rows, markdown_table, display_means

__all__ = [
    "reg_inc_beta",
    "f_cdf",
    "f_sf",
    "f_critical",
    "two_way_anova",
    "mcnemar_pair",
    "pairwise_mcnemar",
    "anova_to_rows",
    "mcnemar_to_rows",
    "means_to_rows",
    "markdown_table",
    "display_means",
]
