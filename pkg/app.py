# app.py
from __future__ import annotations

import logging
import logging.config
from pathlib import Path

from flask import Flask
from flask.cli import FlaskGroup

from config import get_config

# Blueprints (apenas comandos de linha de comando)
from blueprints.coxeter import coxeter_bp
from blueprints.algebra import algebra_bp
from blueprints.verify import verify_bp


def _setup_logging(app: Flask) -> None:
    ini = Path(app.config.get("LOG_CONFIG", "logging.ini"))
    if ini.exists():
        logging.config.fileConfig(ini, disable_existing_loggers=False)
    level = app.config.get("LOG_LEVEL", "INFO")
    logging.getLogger().setLevel(level)
    app.logger.setLevel(level)


def create_app(config_object=None) -> Flask:
    app = Flask(__name__)
    app.config.from_object(config_object or get_config())

    _setup_logging(app)

    app.register_blueprint(coxeter_bp)
    app.register_blueprint(algebra_bp)
    app.register_blueprint(verify_bp)

    app.logger.debug("APP_READY config=%s", type(config_object or get_config()).__name__)
    return app


app = create_app()


if __name__ == "__main__":
    FlaskGroup(create_app=create_app)()
