"""
Experiment configuration and CLI error handling.
"""
