"""
图像对清单与评分 CSV 的读写。

清单列：pair_id, image1, image2, truth_h, desc_a, desc_b（后三列可省略或留空），
相对路径以清单文件所在目录为基准。
"""

import csv
import os
from pathlib import Path
from typing import Iterable, List, Optional, Union

from core.exceptions import FormatError
from core.models.benchmark_config import PairSpec
from core.models.score_record import SCORE_COLUMNS, ScoreRecord

PAIR_COLUMNS = ["pair_id", "image1", "image2", "truth_h", "desc_a", "desc_b"]
REQUIRED_PAIR_COLUMNS = ("pair_id", "image1", "image2")


def _resolve(base: Path, value: Optional[str]) -> Optional[Path]:
    if value is None or not value.strip():
        return None
    path = Path(value.strip())
    return path if path.is_absolute() else base / path


def read_pair_list(path: Union[str, Path]) -> List[PairSpec]:
    path = Path(path)
    base = path.parent
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        header = reader.fieldnames or []
        missing = [c for c in REQUIRED_PAIR_COLUMNS if c not in header]
        if missing:
            raise FormatError(f"{path}: missing pair list column(s) {', '.join(missing)}")
        pairs = []
        seen = set()
        for line_no, row in enumerate(reader, start=2):
            pair_id = (row.get("pair_id") or "").strip()
            if not pair_id:
                raise FormatError(f"{path}:{line_no}: empty pair_id")
            if pair_id in seen:
                raise FormatError(f"{path}:{line_no}: duplicate pair_id '{pair_id}'")
            seen.add(pair_id)
            image1 = _resolve(base, row.get("image1"))
            image2 = _resolve(base, row.get("image2"))
            if image1 is None or image2 is None:
                raise FormatError(f"{path}:{line_no}: image1 and image2 are required")
            pairs.append(
                PairSpec(
                    pair_id=pair_id,
                    image1=image1,
                    image2=image2,
                    truth_h=_resolve(base, row.get("truth_h")),
                    desc_a=_resolve(base, row.get("desc_a")),
                    desc_b=_resolve(base, row.get("desc_b")),
                )
            )
    if not pairs:
        raise FormatError(f"{path}: pair list is empty")
    return pairs


def _relative(base: Path, value: Optional[Path]) -> str:
    if value is None:
        return ""
    try:
        return Path(os.path.relpath(value, base)).as_posix()
    except ValueError:
        return str(value)


def write_pair_list(path: Union[str, Path], pairs: Iterable[PairSpec]) -> None:
    path = Path(path)
    base = path.parent
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(PAIR_COLUMNS)
        for p in pairs:
            writer.writerow(
                [
                    p.pair_id,
                    _relative(base, p.image1),
                    _relative(base, p.image2),
                    _relative(base, p.truth_h),
                    _relative(base, p.desc_a),
                    _relative(base, p.desc_b),
                ]
            )


def write_scores(path: Union[str, Path], records: Iterable[ScoreRecord]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(SCORE_COLUMNS)
        for record in records:
            writer.writerow(record.to_row())


def read_scores(path: Union[str, Path]) -> List[ScoreRecord]:
    path = Path(path)
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        header = reader.fieldnames or []
        missing = [c for c in SCORE_COLUMNS if c != "corner_error" and c not in header]
        if missing:
            raise FormatError(f"{path}: missing score column(s) {', '.join(missing)}")
        return [ScoreRecord.from_row(row) for row in reader]
