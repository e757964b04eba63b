"""Embedded behavior languages: automata and activity graphs."""
