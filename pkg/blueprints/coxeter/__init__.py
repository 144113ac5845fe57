from __future__ import annotations
from flask import Blueprint

coxeter_bp = Blueprint("coxeter", __name__, cli_group=None)

from . import commands  # noqa: E402,F401
