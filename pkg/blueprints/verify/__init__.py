from __future__ import annotations
from flask import Blueprint

verify_bp = Blueprint("verify", __name__, cli_group=None)

from . import commands  # noqa: E402,F401
