"""Parsers, printers and multi-file loading."""

from arcc.frontend.languages import (BASE, PROFILES, SCHEDULED, BehaviorLanguage, BehaviorRegistry,
                                     LanguageProfile, default_registry, register_behavior_language)
from arcc.frontend.parser import parse_architecture, parse_binding, parse_data_model, parse_generator_model
from arcc.frontend.project import Project, load_project, load_sources

__all__ = [
    "BASE", "PROFILES", "SCHEDULED", "BehaviorLanguage", "BehaviorRegistry", "LanguageProfile", "Project",
    "default_registry", "load_project", "load_sources", "parse_architecture", "parse_binding",
    "parse_data_model", "parse_generator_model", "register_behavior_language",
]
