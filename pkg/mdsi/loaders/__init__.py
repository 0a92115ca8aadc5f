"""
Readers for images and dataset manifests
"""
