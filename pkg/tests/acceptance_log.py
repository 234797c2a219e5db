"""Shared record of acceptance criterion outcomes, printed by the conftest summary hook."""

RESULTS = {}
