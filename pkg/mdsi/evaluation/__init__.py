"""
Dataset-level evaluation: correlations, logistic mapping, significance tests,
batch scoring and ablation sweeps
"""
