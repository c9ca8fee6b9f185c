"""Prompt templates and reply parsing."""

from .extract import ParsedResponse, extract_action, extract_intermediates, parse_response
from .payloads import ParseFailure, format_payload, parse_payload
from .templates import PromptTemplate, Variant, get_template, prompt_for, render_prompt

__all__ = [
    "ParseFailure",
    "ParsedResponse",
    "PromptTemplate",
    "Variant",
    "extract_action",
    "extract_intermediates",
    "format_payload",
    "get_template",
    "parse_payload",
    "parse_response",
    "prompt_for",
    "render_prompt",
]
