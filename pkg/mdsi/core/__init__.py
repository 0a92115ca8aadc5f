"""
Core models, configuration and the metric pipeline
"""
