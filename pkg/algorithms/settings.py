"""
Ayarlar
Varsayılan tavanlar ve veri dosyası yolları; KNOTLAB_ önekli ortam
değişkenleri ile değiştirilebilir, CLI bayrakları ortamı ezer.
"""

import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

ENV_PREFIX = 'KNOTLAB_'
DATA_DIR = Path(__file__).resolve().parent.parent / 'data'

FIELDS = ('gf2', 'q')


@dataclass(frozen=True)
class Settings:
    bracket_ceiling: int = 16
    kh_ceiling: int = 14
    qa_budget: int = 10 ** 6
    qa_depth: int = 64
    workers: int = 1
    field: str = 'q'
    corpus_path: Path = DATA_DIR / 'rolfsen.csv'
    injected_path: Path = DATA_DIR / 'injected_sn.json'
    watchlist_path: Path = DATA_DIR / 'genus_two.json'

    @classmethod
    def from_env(cls, environ: Optional[dict] = None) -> 'Settings':
        """KNOTLAB_* değişkenlerinden ayarları oku"""
        env = os.environ if environ is None else environ
        base = cls()
        values = {}
        for key, cast in (('bracket_ceiling', int), ('kh_ceiling', int),
                          ('qa_budget', int), ('qa_depth', int), ('workers', int),
                          ('field', str), ('corpus_path', Path),
                          ('injected_path', Path), ('watchlist_path', Path)):
            raw = env.get(ENV_PREFIX + key.upper())
            if raw is None and key.endswith('_path'):
                raw = env.get(ENV_PREFIX + key[:-5].upper())
            if raw is not None:
                values[key] = cast(raw)
        settings = replace(base, **values)
        settings.validate()
        return settings

    def override(self, **kwargs) -> 'Settings':
        """None olmayan değerlerle yeni ayar nesnesi"""
        values = {k: v for k, v in kwargs.items() if v is not None}
        settings = replace(self, **values)
        settings.validate()
        return settings

    def validate(self):
        if self.field not in FIELDS:
            raise ValueError(f"Geçersiz cisim: {self.field} (gf2 veya q)")
        for name in ('bracket_ceiling', 'kh_ceiling', 'qa_budget', 'qa_depth', 'workers'):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} pozitif olmalı")


_settings = None


def get_settings() -> Settings:
    """Ortamdan okunan ayarların tekil örneği"""
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def reset_settings():
    global _settings
    _settings = None
