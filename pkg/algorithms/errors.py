"""
Hata sınıfları
Kütüphane kodu hata fırlatır, ekrana yazmaz; API ve CLI bunları yakalar.
"""

from typing import Dict, Optional, Tuple


class KnotError(ValueError):
    """Tüm düğüm hesaplama hatalarının temel sınıfı"""


class PDParseError(KnotError):
    """PD metni çözümlenemedi"""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (konum {position})"
        super().__init__(message)


class DiagramError(KnotError):
    """Geçersiz diyagram ya da geçersiz işlem (yönlendirme, indeks, bileşen sayısı)"""


class SplitDiagramError(DiagramError):
    """Ayrık (bağlantısız) diyagram bu işlem için kabul edilmez"""


class CeilingExceeded(KnotError):
    """Kesişim sayısı ayarlanan tavanı aşıyor"""

    def __init__(self, what: str, limit: int, size: int):
        self.what = what
        self.limit = limit
        self.size = size
        super().__init__(f"{what}: {size} kesişim, tavan {limit}")


class MissingInvariant(KnotError):
    """Enjekte edilmiş değer bulunamadı"""


class ReductionError(KnotError):
    """Yayılan ağaç indirgemesi sonlanmadı (kural hatası belirtisi)"""


class CorpusError(KnotError):
    """Korpus dosyasında hatalı satır"""

    def __init__(self, message: str, row: Optional[int] = None):
        self.row = row
        if row is not None:
            message = f"satır {row}: {message}"
        super().__init__(message)


class AnnotationMismatch(CorpusError):
    """Satırdaki yazılı değer diyagramdan hesaplananla tutmuyor"""

    def __init__(self, name: str, mismatches: Dict[str, Tuple[object, object]], row: Optional[int] = None):
        self.name = name
        self.mismatches = dict(mismatches)
        detail = ', '.join(f"{key}: yazılı {a}, hesaplanan {b}" for key, (a, b) in self.mismatches.items())
        super().__init__(f"{name}: {detail}", row)
