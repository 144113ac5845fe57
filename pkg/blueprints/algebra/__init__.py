from __future__ import annotations
from flask import Blueprint

algebra_bp = Blueprint("algebra", __name__, cli_group=None)

from . import commands  # noqa: E402,F401
