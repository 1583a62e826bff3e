"""Exact arithmetic for incoherent Eisenstein series over F_q(t)."""
