"""
catflow command-line front end: experiment configs, commands and artifacts.
"""
