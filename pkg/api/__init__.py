"""
REST API package for graph counting.

Optional HTTP front end over the counting library; see api/main.py.
"""
