"""
hermlab.core

Errors, configuration, the verification harness and its front-end independent services.
"""
