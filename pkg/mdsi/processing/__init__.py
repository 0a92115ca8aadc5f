"""
Pixel kernels: preprocessing, color conversion, gradients, similarity maps and pooling
"""
