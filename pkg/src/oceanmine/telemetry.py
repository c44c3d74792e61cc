"""Reader for raw drifting-float telemetry dumps.

A dump is line-oriented ASCII.  Three kinds of line occur:

  header line      one per satellite message, positional whitespace-
                   separated tokens (see table below)
  block time line  optional, starts with a date token; restamps the
                   message payload with a per-block acquisition time
  data line        whitespace-separated two-hex-digit byte tokens

Header token layout (left to right):

  pos  field            form                  example
  ---  ---------------  --------------------  -------------
  1    platform_id      5 decimal digits      02602
  2    message_id       decimal digits        2902102
  3    field_a          integer               65
  4    field_b          integer               32
  5    class_code       single uppercase      K
  6    pass_count       integer               2
  7    date             YYYY-MM-DD            2003-01-10
  8    time             HH:MM:SS[.f]          11:50:18.0
  9    latitude         decimal degrees       0.691
  10   longitude        decimal degrees       76.559
  11   altitude_or_zero decimal               0.000
  12   transmitter_id   opaque token          401647210

Some feeds split message_id across several tokens ("29021 02" for
"2902102").  The reader re-joins them: the tokens between platform_id
and the two integers preceding class_code are concatenated, so both
renditions parse to the same header.  Rendering always emits the
canonical 12-token form.

A block time line is "DATE TIME SEQ [BYTE ...]"; SEQ is a decimal
sequence number and is validated then dropped.  The first block time
line of a block sets block_time; any bytes riding on the line join the
payload in reading order.

Data bytes pair big-endian into 16-bit words, across line boundaries,
within a block.  A block ending on an unpaired byte is an error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Iterable, Iterator

from .errors import (
    BadHexToken,
    EmptyInput,
    MalformedHeader,
    OddByteCount,
)

_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")
_TIME_RE = re.compile(r"^\d{2}:\d{2}:\d{2}(\.\d+)?$")
_HEX_RE = re.compile(r"^[0-9a-fA-F]{2}$")
_PLATFORM_RE = re.compile(r"^\d{5}$")

# Minimum token count for a header line; message_id may span extra
# tokens beyond this, the rest of the layout is fixed.
_MIN_TOKENS = 12

WORDS_PER_RENDER_LINE = 3


@dataclass(frozen=True)
class HeaderFields:
    """One parsed header line."""

    platform_id: str
    message_id: str
    field_a: int
    field_b: int
    class_code: str
    pass_count: int
    observed_at: datetime
    latitude: float
    longitude: float
    altitude_or_zero: float
    transmitter_id: str


@dataclass
class MessageBlock:
    """A header plus the words decoded from the lines attributed to it."""

    header: HeaderFields
    words: list[int]
    block_time: datetime | None = None
    source_line_span: tuple[int, int] = field(default=(0, 0), compare=False)

    @property
    def is_position_only(self) -> bool:
        """True when the block carried no payload at all."""
        return not self.words


def _parse_timestamp(date_tok: str, time_tok: str, line_no: int | None) -> datetime:
    if not _DATE_RE.match(date_tok) or not _TIME_RE.match(time_tok):
        raise MalformedHeader(
            f"bad timestamp tokens {date_tok!r} {time_tok!r}", line_no
        )
    text = f"{date_tok} {time_tok}"
    for fmt in ("%Y-%m-%d %H:%M:%S.%f", "%Y-%m-%d %H:%M:%S"):
        try:
            return datetime.strptime(text, fmt)
        except ValueError:
            continue
    raise MalformedHeader(f"unparseable timestamp {text!r}", line_no)


def _format_timestamp(ts: datetime) -> str:
    base = ts.strftime("%Y-%m-%d %H:%M:%S")
    if ts.microsecond:
        frac = f"{ts.microsecond:06d}".rstrip("0")
        return f"{base}.{frac}"
    return base


def parse_header(line: str, line_no: int | None = None) -> HeaderFields:
    """Parse one header line into HeaderFields.

    Tokens are bound positionally as documented in the module
    docstring.  Raises MalformedHeader (with the line number when
    known) on wrong token count, a malformed field, or an out-of-range
    coordinate.
    """
    tokens = line.split()
    if len(tokens) < _MIN_TOKENS:
        raise MalformedHeader(
            f"expected at least {_MIN_TOKENS} tokens, got {len(tokens)}", line_no
        )

    platform_id = tokens[0]
    if not _PLATFORM_RE.match(platform_id):
        raise MalformedHeader(f"bad platform id {platform_id!r}", line_no)

    # Fixed tail: class_code pass_count date time lat lon alt transmitter.
    (class_code, pass_tok, date_tok, time_tok,
     lat_tok, lon_tok, alt_tok, transmitter_id) = tokens[-8:]
    mid = tokens[1:-8]
    if len(mid) < 3:
        raise MalformedHeader(
            f"expected at least {_MIN_TOKENS} tokens, got {len(tokens)}", line_no
        )

    message_id = "".join(mid[:-2])
    if not message_id.isdigit():
        raise MalformedHeader(f"bad message id {' '.join(mid[:-2])!r}", line_no)

    try:
        field_a = int(mid[-2])
        field_b = int(mid[-1])
    except ValueError:
        raise MalformedHeader(
            f"bad integer fields {mid[-2]!r} {mid[-1]!r}", line_no
        ) from None

    if len(class_code) != 1 or not class_code.isupper():
        raise MalformedHeader(f"bad class code {class_code!r}", line_no)
    if not pass_tok.isdigit():
        raise MalformedHeader(f"bad pass count {pass_tok!r}", line_no)

    observed_at = _parse_timestamp(date_tok, time_tok, line_no)

    try:
        latitude = float(lat_tok)
        longitude = float(lon_tok)
        altitude = float(alt_tok)
    except ValueError:
        raise MalformedHeader(
            f"bad coordinate tokens {lat_tok!r} {lon_tok!r} {alt_tok!r}", line_no
        ) from None
    if not -90.0 <= latitude <= 90.0:
        raise MalformedHeader(f"latitude {latitude} out of [-90, 90]", line_no)
    if not -180.0 <= longitude <= 180.0:
        raise MalformedHeader(f"longitude {longitude} out of [-180, 180]", line_no)

    return HeaderFields(
        platform_id=platform_id,
        message_id=message_id,
        field_a=field_a,
        field_b=field_b,
        class_code=class_code,
        pass_count=int(pass_tok),
        observed_at=observed_at,
        latitude=latitude,
        longitude=longitude,
        altitude_or_zero=altitude,
        transmitter_id=transmitter_id,
    )


def words_of(lines: Iterable[str]) -> list[int]:
    """Pair hex byte tokens into big-endian 16-bit words.

    Bytes pair across line boundaries.  Raises BadHexToken on a token
    that is not exactly two hex digits and OddByteCount when the total
    byte count is odd.
    """
    raw: list[int] = []
    for line in lines:
        for tok in line.split():
            if not _HEX_RE.match(tok):
                raise BadHexToken(tok)
            raw.append(int(tok, 16))
    if len(raw) % 2:
        raise OddByteCount(f"{len(raw)} bytes leave one unpaired")
    return [(raw[i] << 8) | raw[i + 1] for i in range(0, len(raw), 2)]


def _looks_like_header(tokens: list[str]) -> bool:
    return bool(tokens) and _PLATFORM_RE.match(tokens[0]) is not None


def _looks_like_block_time(tokens: list[str]) -> bool:
    return bool(tokens) and _DATE_RE.match(tokens[0]) is not None


class _BlockBuilder:
    """Accumulates one block's bytes until the next header closes it."""

    def __init__(self, header: HeaderFields, first_line: int):
        self.header = header
        self.block_time: datetime | None = None
        self.bytes: list[int] = []
        self.first_line = first_line
        self.last_line = first_line

    def add_bytes(self, tokens: list[str], line_no: int) -> None:
        for tok in tokens:
            if not _HEX_RE.match(tok):
                raise BadHexToken(tok, line_no)
            self.bytes.append(int(tok, 16))
        self.last_line = line_no

    def finish(self) -> MessageBlock:
        if len(self.bytes) % 2:
            raise OddByteCount(
                f"block has {len(self.bytes)} bytes, one unpaired",
                span=(self.first_line, self.last_line),
            )
        words = [
            (self.bytes[i] << 8) | self.bytes[i + 1]
            for i in range(0, len(self.bytes), 2)
        ]
        return MessageBlock(
            header=self.header,
            words=words,
            block_time=self.block_time,
            source_line_span=(self.first_line, self.last_line),
        )


def parse_stream(source: str | Iterable[str]) -> list[MessageBlock]:
    """Parse a telemetry dump into MessageBlocks, in input order.

    Every data line is attributed to the most recent header.  Blank
    lines are skipped; CR/LF and trailing whitespace are tolerated.
    Raises MalformedHeader, BadHexToken, OddByteCount (all with line
    positions) and EmptyInput when no block is found.
    """
    lines: Iterator[str]
    if isinstance(source, str):
        lines = iter(source.splitlines())
    else:
        lines = iter(source)

    blocks: list[MessageBlock] = []
    current: _BlockBuilder | None = None

    for line_no, raw in enumerate(lines, start=1):
        tokens = raw.split()
        if not tokens:
            continue

        if _looks_like_header(tokens):
            if current is not None:
                blocks.append(current.finish())
            header = parse_header(raw, line_no)
            current = _BlockBuilder(header, line_no)
            continue

        if current is None:
            raise MalformedHeader("data line before any header", line_no)

        if _looks_like_block_time(tokens):
            if len(tokens) < 2 or not _TIME_RE.match(tokens[1]):
                raise MalformedHeader(
                    f"block time line missing time token: {raw.strip()!r}", line_no
                )
            stamp = _parse_timestamp(tokens[0], tokens[1], line_no)
            if current.block_time is None:
                current.block_time = stamp
            rest = tokens[2:]
            if rest:
                if not rest[0].isdigit():
                    raise MalformedHeader(
                        f"block time line has bad sequence token {rest[0]!r}",
                        line_no,
                    )
                current.add_bytes(rest[1:], line_no)
            else:
                current.last_line = line_no
            continue

        current.add_bytes(tokens, line_no)

    if current is not None:
        blocks.append(current.finish())
    if not blocks:
        raise EmptyInput("no message blocks in input")
    return blocks


def parse_file(path: str | Path) -> list[MessageBlock]:
    """Parse a telemetry dump from disk."""
    with open(path, "r", encoding="ascii") as fh:
        return parse_stream(fh)


def render_header(h: HeaderFields) -> str:
    """Render a header back to its canonical 12-token line."""
    return " ".join(
        [
            h.platform_id,
            h.message_id,
            str(h.field_a),
            str(h.field_b),
            h.class_code,
            str(h.pass_count),
            _format_timestamp(h.observed_at),
            repr(h.latitude),
            repr(h.longitude),
            repr(h.altitude_or_zero),
            h.transmitter_id,
        ]
    )


def render_block(block: MessageBlock) -> str:
    """Render a block to text such that re-parsing reproduces it.

    Words are split back into big-endian byte pairs, three words per
    line.  The block time line, when present, is emitted with sequence
    number 1 and no payload of its own.
    """
    out = [render_header(block.header)]
    if block.block_time is not None:
        out.append(f"{_format_timestamp(block.block_time)} 1")
    byte_toks = []
    for w in block.words:
        byte_toks.append(f"{w >> 8:02X}")
        byte_toks.append(f"{w & 0xFF:02X}")
    per_line = WORDS_PER_RENDER_LINE * 2
    for i in range(0, len(byte_toks), per_line):
        out.append(" ".join(byte_toks[i : i + per_line]))
    return "\n".join(out) + "\n"


def render_stream(blocks: Iterable[MessageBlock]) -> str:
    """Render a sequence of blocks to one dump."""
    return "".join(render_block(b) for b in blocks)
