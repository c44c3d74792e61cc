"""End-to-end run: telemetry text in, per-region CSVs and a report out.

Stages run strictly in order: parse, decode, segment, index, mine,
compose.  Every artifact is computed in memory first and written only
after the whole run has succeeded, so a failing run leaves no partial
output tree behind.  All writes are plain ASCII with LF newlines and
fully determined by the inputs; rerunning a config produces a
byte-identical tree.

Output layout under the configured directory:

    records_<region>.csv     decoded profile records
    index_<region>.csv       index series (plot data)
    rules_<region>.csv       mined episode rules
    confidence_<region>.csv  cumulative confidence of the top rule
    report.jsonl             one JSON record per region row
    report.txt               the same table, aligned for reading
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timedelta
from pathlib import Path

from . import advisories as adv
from . import episodes as ep
from .decoder import (
    DEFAULT_CALIBRATION,
    CalibrationTable,
    ProfileRecord,
    load_calibration,
)
from .errors import (
    AllSamplesRejected,
    ConfigError,
    DataError,
    NonTripleWordCount,
)
from .oscillation import (
    DEFAULT_PRESSURE_FLOOR,
    DEFAULT_WINDOW_LEN,
    IndexSample,
    band_of,
    compute_series,
)
from .regions import key_string, segment
from .telemetry import HeaderFields, parse_file

DEFAULT_CELL_SIZE = 1.0
DEFAULT_DELTA_S = 14400.0  # bridges same-day profile pairs, splits days


@dataclass
class PipelineConfig:
    inputs: list[Path]
    out_dir: Path
    cell_size: float = DEFAULT_CELL_SIZE
    calibration_path: Path | None = None
    pressure_floor: float = DEFAULT_PRESSURE_FLOOR
    window_len: int = DEFAULT_WINDOW_LEN
    delta_s: float = DEFAULT_DELTA_S
    k: int = ep.DEFAULT_K
    max_len: int = ep.DEFAULT_MAX_LEN
    win_a_s: float = 0.0
    win_c_s: float = 0.0
    lag_s: float | None = None  # defaults to delta_s
    min_support: int = ep.DEFAULT_MIN_SUPPORT
    theta: float = adv.DEFAULT_THETA
    write_plots: bool = True

    def validate(self) -> None:
        if not self.inputs:
            raise ConfigError("at least one input file is required")
        if self.cell_size <= 0:
            raise ConfigError(f"cell size must be positive, got {self.cell_size}")
        if self.pressure_floor <= 0:
            raise ConfigError(
                f"pressure floor must be positive, got {self.pressure_floor}"
            )
        if self.window_len < 1:
            raise ConfigError(f"window length must be >= 1, got {self.window_len}")
        if self.delta_s < 0:
            raise ConfigError(f"delta must be non-negative, got {self.delta_s}")
        if self.k < 1:
            raise ConfigError(f"class count must be >= 1, got {self.k}")
        if self.max_len < 1:
            raise ConfigError(f"max episode length must be >= 1, got {self.max_len}")
        if self.win_a_s < 0 or self.win_c_s < 0:
            raise ConfigError("episode windows must be non-negative")
        if self.lag_s is not None and self.lag_s < 0:
            raise ConfigError(f"lag must be non-negative, got {self.lag_s}")
        if self.min_support < 1:
            raise ConfigError(f"min support must be >= 1, got {self.min_support}")
        if not 0.0 < self.theta <= 1.0:
            raise ConfigError(f"theta must be in (0, 1], got {self.theta}")

    @property
    def lag(self) -> timedelta:
        return timedelta(seconds=self.lag_s if self.lag_s is not None else self.delta_s)


@dataclass
class RunResult:
    report: adv.ReportTable
    written: list[Path]
    record_count: int
    region_count: int
    rejected_blocks: int


def _fmt17(value: float) -> str:
    return f"{value:.17g}"


# --- persistence -----------------------------------------------------------


def records_csv(records: list[ProfileRecord]) -> str:
    lines = ["region,observed_at,level,temperature,salinity,pressure"]
    for r in records:
        region = key_string(r.region_key) if r.region_key else ""
        lines.append(
            f"{region},{r.observed_at.isoformat()},{r.level},"
            f"{r.temperature:.3f},{r.salinity:.3f},{r.pressure:.1f}"
        )
    return "\n".join(lines) + "\n"


def load_records(path: str | Path) -> list[ProfileRecord]:
    """Read a records CSV back; inverse of records_csv."""
    from .regions import RegionKey

    records = []
    lines = Path(path).read_text(encoding="ascii").splitlines()
    for line in lines[1:]:
        region, ts, level, t, s, p = line.split(",")
        parts = region.rsplit("_", 2)
        key = RegionKey(parts[0], int(parts[1]), int(parts[2])) if region else None
        records.append(
            ProfileRecord(
                observed_at=datetime.fromisoformat(ts),
                level=int(level),
                temperature=float(t),
                salinity=float(s),
                pressure=float(p),
                region_key=key,
            )
        )
    return records


def index_csv(samples: list[IndexSample]) -> str:
    lines = ["observed_at,n_value"]
    for s in samples:
        lines.append(f"{s.observed_at.isoformat()},{_fmt17(s.n_value)}")
    return "\n".join(lines) + "\n"


def rules_csv(rules: list[ep.EpisodeRule], k: int) -> str:
    lines = ["antecedent,consequent,win_a_s,win_c_s,lag_s,support,confidence"]
    for r in rules:
        lines.append(
            f"{ep.episode_label(r.antecedent, k)},{ep.episode_label(r.consequent, k)},"
            f"{_fmt17(r.win_a.total_seconds())},{_fmt17(r.win_c.total_seconds())},"
            f"{_fmt17(r.lag.total_seconds())},{r.support},{_fmt17(r.confidence)}"
        )
    return "\n".join(lines) + "\n"


def confidence_csv(curve: list[tuple[datetime, float]], rule_label: str) -> str:
    lines = ["observed_at,rule_id,confidence"]
    for ts, conf in curve:
        lines.append(f"{ts.isoformat()},{rule_label},{_fmt17(conf)}")
    return "\n".join(lines) + "\n"


# --- the run ---------------------------------------------------------------


@dataclass
class _RegionArtifacts:
    key_str: str
    records: list[ProfileRecord]
    samples: list[IndexSample] = field(default_factory=list)
    rules: list[ep.EpisodeRule] = field(default_factory=list)
    curve: list[tuple[datetime, float]] = field(default_factory=list)
    top_rule_label: str | None = None
    summary: adv.RegionSummary | None = None


def _tag(err: DataError, stage: str) -> DataError:
    err.stage = stage  # type: ignore[attr-defined]
    return err


def run(config: PipelineConfig) -> RunResult:
    """Execute the full pipeline for one configuration.

    Raises ConfigError for bad parameters, OSError for unreadable
    inputs, DataError subclasses (tagged with a .stage attribute) for
    format and content failures.  Nothing is written unless the whole
    run succeeds.
    """
    config.validate()

    cal = DEFAULT_CALIBRATION
    if config.calibration_path is not None:
        cal = load_calibration(config.calibration_path)

    # All inputs must be present and readable before any work starts.
    for path in config.inputs:
        if not Path(path).is_file():
            raise FileNotFoundError(f"input file not found: {path}")

    blocks = []
    for path in config.inputs:
        try:
            blocks.extend(parse_file(path))
        except DataError as e:
            raise _tag(e, f"parse {path}")

    tagged: list[tuple[ProfileRecord, HeaderFields]] = []
    rejected_blocks = 0
    from .decoder import decode_block

    for block in blocks:
        try:
            block_records = decode_block(block, cal)
        except NonTripleWordCount:
            rejected_blocks += 1
            continue
        for rec in block_records:
            tagged.append((rec, block.header))
    if not tagged:
        raise _tag(
            DataError(
                f"no decodable records in {len(blocks)} blocks "
                f"({rejected_blocks} rejected)"
            ),
            "decode",
        )

    segments = segment(tagged, config.cell_size)

    delta = timedelta(seconds=config.delta_s)
    win_a = timedelta(seconds=config.win_a_s)
    win_c = timedelta(seconds=config.win_c_s)
    lag = config.lag

    regions: list[_RegionArtifacts] = []
    alive = 0
    for seg in segments:
        key_str = key_string(seg.key)
        art = _RegionArtifacts(key_str=key_str, records=seg.records)
        first_seen = seg.records[0].observed_at
        last_seen = seg.records[-1].observed_at
        try:
            series = compute_series(seg, config.pressure_floor)
        except AllSamplesRejected:
            art.summary = adv.RegionSummary(
                region=key_str,
                status=adv.STATUS_REJECTED,
                sample_count=0,
                skipped=len(seg.records),
                first_seen=first_seen,
                last_seen=last_seen,
            )
            regions.append(art)
            continue
        alive += 1
        art.samples = series.samples

        band = band_of([s.n_value for s in series.samples], config.window_len)
        advisories = adv.detect_strong_waves(series.samples, band)

        events = ep.build_events(series.samples, delta, config.k)
        art.rules = ep.mine_rules(
            events,
            min_support=config.min_support,
            max_len=config.max_len,
            win_a=win_a,
            win_c=win_c,
            lag=lag,
        )
        top_rule = None
        top_confidence = None
        if art.rules:
            top = art.rules[0]
            top_rule = ep.rule_id(top, config.k)
            top_confidence = top.confidence
            art.top_rule_label = top_rule
            art.curve = ep.confidence_series(events, top, delta)
            advisories.extend(
                adv.detect_fishing_zone(art.curve, config.theta, rule=top_rule)
            )

        art.summary = adv.RegionSummary(
            region=key_str,
            status=adv.STATUS_OK,
            sample_count=len(series.samples),
            skipped=series.skipped,
            first_seen=first_seen,
            last_seen=last_seen,
            band=band,
            top_rule=top_rule,
            top_confidence=top_confidence,
            advisories=adv.tag_region(advisories, key_str),
        )
        regions.append(art)

    if alive == 0:
        raise _tag(
            AllSamplesRejected("every region failed the pressure floor"), "index"
        )

    generated_at = max(rec.observed_at for rec, _ in tagged)
    report = adv.compose_report(
        [art.summary for art in regions if art.summary is not None], generated_at
    )

    # Compute done; now write the tree.
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    def emit(name: str, text: str) -> None:
        path = out_dir / name
        path.write_text(text, encoding="ascii", newline="")
        written.append(path)

    for art in regions:
        emit(f"records_{art.key_str}.csv", records_csv(art.records))
        emit(f"rules_{art.key_str}.csv", rules_csv(art.rules, config.k))
        if config.write_plots:
            emit(f"index_{art.key_str}.csv", index_csv(art.samples))
            emit(
                f"confidence_{art.key_str}.csv",
                confidence_csv(art.curve, art.top_rule_label or ""),
            )
    emit("report.jsonl", adv.report_jsonl(report))
    emit("report.txt", adv.report_text(report))

    return RunResult(
        report=report,
        written=written,
        record_count=len(tagged),
        region_count=len(segments),
        rejected_blocks=rejected_blocks,
    )
