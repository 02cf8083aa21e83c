"""Workbench for subregular language families, comet normal forms, and
external contextual grammars."""

from .language import LanguageHandle

__all__ = ["LanguageHandle"]
__version__ = "0.1.0"
