# utils/__init__.py
# deixa o diretório 'utils' um pacote Python
