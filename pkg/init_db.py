"""
Düğüm Laboratuvarı - Veritabanı Başlatma Scripti
Bu script veritabanını oluşturur ve isteğe bağlı olarak korpus raporlarını önbelleğe yükler.
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from app import app, db, InvariantRecord, cached_report, get_corpus
from algorithms.errors import KnotError


def init_database(force_reset=False, preload=False, max_crossings=8):
    """Veritabanını başlat

    Args:
        force_reset: True ise mevcut önbellek silinir
        preload: True ise korpustaki küçük düğümlerin raporları hesaplanır
        max_crossings: önbelleğe alınacak en büyük kesişim sayısı
    """

    with app.app_context():
        if force_reset:
            db.drop_all()
            print("⚠ Tüm tablolar silindi (force_reset=True)")

        db.create_all()
        print("✓ Veritabanı tabloları oluşturuldu")

        if not preload:
            print(f"→ Önbellekte {InvariantRecord.query.count()} rapor var")
            return

        added = 0
        for name, entry in get_corpus().items():
            d = entry.diagram()
            if d.crossing_count > max_crossings:
                continue
            try:
                cached_report(name, d, 'q')
                added += 1
            except KnotError as e:
                print(f"✗ {name}: {e}")
        print(f"✓ {added} rapor önbelleğe alındı")


if __name__ == '__main__':
    force = '--force' in sys.argv or '-f' in sys.argv
    preload = '--preload' in sys.argv

    if force:
        print("⚠ FORCE RESET modu aktif - önbellek silinecek!")

    init_database(force_reset=force, preload=preload)
