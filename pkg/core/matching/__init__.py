"""
描述子匹配。
"""

from .brute_force_matcher import brute_force_match, match_all_metrics, nearest

__all__ = ["brute_force_match", "match_all_metrics", "nearest"]
