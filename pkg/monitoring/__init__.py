"""
Monitoring and observability
"""
