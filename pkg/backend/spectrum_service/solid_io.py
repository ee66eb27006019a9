from pathlib import Path
from typing import IO, Callable, Iterable, List, Sequence, Tuple, Union

import jsonlines
import orjson

from errors import GeometryError, SolidSetFormatError
from geometry_service.bitset import Bitset
from geometry_service.projective_space import GeometryIndex, Hyperplane, ProjectivePoint
from spectrum_service.spectrum import SolidSet

Source = Union[str, Path, IO]


def _read_records(source: Source) -> list:
    try:
        if isinstance(source, (str, Path)):
            with jsonlines.open(source, mode="r", loads=orjson.loads) as reader:
                return list(reader)
        return list(jsonlines.Reader(source, loads=orjson.loads))
    except jsonlines.InvalidLineError as e:
        raise SolidSetFormatError(f"invalid JSON: {e.line!r}", line=e.lineno) from None
    except UnicodeDecodeError as e:
        raise SolidSetFormatError(f"input is not valid UTF-8 ({e.reason})") from None
    except OSError as e:
        raise SolidSetFormatError(f"cannot read input: {e}") from None


def _record_indices(
    records: Iterable, key: str, parse: Callable[[str], Tuple[int, ...]], index: GeometryIndex
) -> List[int]:
    first_seen = {}
    for lineno, record in enumerate(records, start=1):
        if not isinstance(record, dict) or not isinstance(record.get(key), str):
            raise SolidSetFormatError(f"expected an object with a string '{key}'", line=lineno)
        try:
            i = int(index.indices_of([parse(record[key])])[0])
        except (ValueError, GeometryError) as e:
            raise SolidSetFormatError(str(e), line=lineno) from None
        if i in first_seen:
            raise SolidSetFormatError(f"duplicate entry, first seen on line {first_seen[i]}", line=lineno)
        first_seen[i] = lineno
    return list(first_seen)


def _parse_dual(index: GeometryIndex, text: str) -> Tuple[int, ...]:
    return Hyperplane.parse(index.field, text).dual


def _parse_point(index: GeometryIndex, text: str) -> Tuple[int, ...]:
    return ProjectivePoint.parse(index.field, text).coords


def read_solid_set(source: Source, index: GeometryIndex) -> SolidSet:
    """Read {"dual": "a:b:c:d:e"} lines; coordinates are normalised on read."""
    indices = _record_indices(_read_records(source), "dual", lambda t: _parse_dual(index, t), index)
    return SolidSet.from_indices(indices, index)


def read_point_set(source: Source, index: GeometryIndex) -> Bitset:
    indices = _record_indices(_read_records(source), "point", lambda t: _parse_point(index, t), index)
    return Bitset.from_indices(indices, index.n)


def _write(target: Source, records: Iterable[dict]) -> None:
    if isinstance(target, (str, Path)):
        with jsonlines.open(target, mode="w", dumps=orjson.dumps) as writer:
            writer.write_all(records)
    else:
        writer = jsonlines.Writer(target, dumps=orjson.dumps)
        writer.write_all(records)
        writer.close()


def write_solid_set(target: Source, hyperplane_indices: Sequence[int], index: GeometryIndex) -> None:
    _write(target, ({"dual": str(index.hyperplane(int(h)))} for h in hyperplane_indices))


def write_point_set(target: Source, point_indices: Sequence[int], index: GeometryIndex) -> None:
    _write(target, ({"point": str(index.point(int(p)))} for p in point_indices))


def solid_set_from_duals(duals: Sequence[str], index: GeometryIndex) -> SolidSet:
    """Same validation as read_solid_set, for dual strings that arrive in a request body."""
    records = ({"dual": d} for d in duals)
    return SolidSet.from_indices(_record_indices(records, "dual", lambda t: _parse_dual(index, t), index), index)
