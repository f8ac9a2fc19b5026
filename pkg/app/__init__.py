"""
Segmentation engine application: configuration, services and CLI
"""
