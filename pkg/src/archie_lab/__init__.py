"""Reward-language workbench: 2D manipulation benchmarks, a constrained reward
DSL with dominance auditing, and a from-scratch parallel SAC trainer."""

__version__ = "0.1.0"
