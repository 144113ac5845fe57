import os
from pathlib import Path
from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent
load_dotenv(BASE_DIR / '.env')


def _as_int(val: str | None, default: int) -> int:
    try:
        return int(str(val).strip())
    except (TypeError, ValueError):
        return default


class Config:
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO').upper()
    LOG_CONFIG = os.getenv('LOG_CONFIG', str(BASE_DIR / 'logging.ini'))

    # valores padrão quando a flag correspondente não é passada
    DEFAULT_SEED = _as_int(os.getenv('DEFAULT_SEED'), 20240501)
    DEFAULT_MAX_LEN = _as_int(os.getenv('DEFAULT_MAX_LEN'), 6)

    # piso do limite de passos da fatoração em diagramas simples
    FACTOR_MAX_LEN = _as_int(os.getenv('FACTOR_MAX_LEN'), 40)

    # tamanhos das varreduras aleatórias do comando verify
    VERIFY_RANDOM_WORDS = _as_int(os.getenv('VERIFY_RANDOM_WORDS'), 10000)
    VERIFY_WORD_LEN = _as_int(os.getenv('VERIFY_WORD_LEN'), 20)
    VERIFY_DECO_WORDS = _as_int(os.getenv('VERIFY_DECO_WORDS'), 1000)
    VERIFY_DECO_LEN = _as_int(os.getenv('VERIFY_DECO_LEN'), 25)
    VERIFY_DECO_ORDERS = _as_int(os.getenv('VERIFY_DECO_ORDERS'), 10)

    # arquivo JSONL de auditoria (vazio = desligado)
    AUDIT_LOG = os.getenv('AUDIT_LOG', '')


class DevConfig(Config):
    DEBUG = True


class ProdConfig(Config):
    DEBUG = False


class TestConfig(Config):
    TESTING = True
    LOG_LEVEL = 'WARNING'
    AUDIT_LOG = ''
    VERIFY_RANDOM_WORDS = 200
    VERIFY_DECO_WORDS = 100


CONFIG_MAP = {'development': DevConfig, 'production': ProdConfig, 'testing': TestConfig}


def get_config():
    env = os.getenv('FLASK_ENV', 'development')
    return CONFIG_MAP.get(env, DevConfig)
