"""Golden script corpus: locations and expected diagnostics."""

from pathlib import Path

CORPUS = Path(__file__).parent / "fixtures" / "scripts"

# every bad corpus file with its expected (line, code) diagnostics
EXPECTED_DIAGNOSTICS = {
    "bad_unknown_directive.gfs": [(2, "syntax")],
    "bad_number.gfs": [(1, "bad-number")],
    "bad_unknown_kind.gfs": [(3, "unknown-kind")],
    "bad_keyval_syntax.gfs": [(3, "syntax")],
    "bad_unknown_key.gfs": [(4, "unknown-key")],
    "bad_missing_param.gfs": [(3, "missing-param")],
    "bad_invalid_value.gfs": [(3, "invalid-param"), (4, "invalid-param")],
    "bad_unknown_name.gfs": [(3, "unknown-name")],
    "bad_duplicate_name.gfs": [(4, "duplicate-name")],
    "bad_non_monotone.gfs": [(4, "non-monotone-time")],
    "bad_after_duration.gfs": [(3, "after-duration")],
    "bad_duplicate_directive.gfs": [(2, "duplicate-directive")],
    "bad_intent_pair.gfs": [(3, "syntax")],
    "bad_plant_mode.gfs": [(3, "syntax")],
    "bad_direction_bit.gfs": [(3, "invalid-param")],
    "bad_command_verb.gfs": [(3, "syntax")],
    "bad_intent_decreasing.gfs": [(3, "invalid-param")],
    "bad_capacity_161.gfs": [(163, "capacity-exceeded")],
    "bad_rate_zero.gfs": [(1, "invalid-param")],
    "bad_duration_negative.gfs": [(2, "invalid-param")],
}
