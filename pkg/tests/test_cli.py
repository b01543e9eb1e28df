"""Command-line surface: claim reports, exports, protocol runs, exit codes."""

import json
import re

import pytest

from stabshare import cli
from stabshare.codes import _code_from_strings, embedded_central_doily
from stabshare.ring import Amplitude, ONE


ALL_CLAIM_IDS = (
    "contextuality-degrees",
    "doily-spread-mub",
    "geometry-counts",
    "heptagon-code-reconstruction",
    "heptagon-identities",
    "heptagon-split-type23",
    "klein-correspondence",
    "negative-planes-grid",
    "no-information",
    "pentagon-code-reconstruction",
    "pentagon-identities",
    "pentagon-split-doily",
    "protocol-recovery",
    "protocol-uniformity",
)

SUITE_CLAIMS = {
    "geometry": ("geometry-counts", "klein-correspondence"),
    "pentagon": (
        "doily-spread-mub",
        "pentagon-code-reconstruction",
        "pentagon-identities",
        "pentagon-split-doily",
    ),
    "heptagon": (
        "heptagon-code-reconstruction",
        "heptagon-identities",
        "heptagon-split-type23",
        "negative-planes-grid",
    ),
    "contextuality": ("contextuality-degrees",),
    "protocols": ("no-information", "protocol-recovery", "protocol-uniformity"),
}


def run_json(capsys, argv):
    code = cli.main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


# --- verify ------------------------------------------------------------------


class TestVerify:
    def test_pentagon_suite_passes(self, capsys):
        assert cli.main(["verify", "pentagon"]) == 0
        out = capsys.readouterr().out
        assert "overall: PASS (4/4 claims)" in out
        for claim_id in SUITE_CLAIMS["pentagon"]:
            assert claim_id in out

    def test_json_report_shape(self, capsys):
        code, report = run_json(capsys, ["verify", "geometry"])
        assert code == 0
        assert set(report) == {"suite", "version", "timestamp", "passed", "claims"}
        assert report["suite"] == "geometry"
        assert report["version"] == "0.1.0"
        assert report["passed"] is True
        ids = [c["claim_id"] for c in report["claims"]]
        assert tuple(ids) == SUITE_CLAIMS["geometry"]
        assert ids == sorted(ids)
        for claim in report["claims"]:
            assert set(claim) == {"claim_id", "anchor", "status", "detail"}
            assert claim["status"] == "pass"
            assert claim["detail"]

    def test_claim_roster(self):
        assert cli.claim_ids("all") == ALL_CLAIM_IDS
        covered = []
        for suite, ids in SUITE_CLAIMS.items():
            assert cli.claim_ids(suite) == ids
            covered.extend(ids)
        assert tuple(sorted(covered)) == ALL_CLAIM_IDS

    def test_unknown_suite_is_a_usage_error(self):
        with pytest.raises(SystemExit) as info:
            cli.main(["verify", "nope"])
        assert info.value.code == 2

    def test_suite_flag_matches_positional(self, capsys):
        code, by_flag = run_json(capsys, ["verify", "--suite", "contextuality"])
        assert code == 0
        code, by_pos = run_json(capsys, ["verify", "contextuality"])
        assert code == 0
        assert by_flag["claims"] == by_pos["claims"]

    def test_conflicting_suites_are_a_usage_error(self):
        with pytest.raises(SystemExit) as info:
            cli.main(["verify", "pentagon", "--suite", "heptagon"])
        assert info.value.code == 2

    def test_out_writes_the_report_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code = cli.main(["verify", "geometry", "--json", "--out", str(target)])
        assert code == 0
        assert capsys.readouterr().out == ""
        report = json.loads(target.read_text())
        assert report["passed"] is True

    def test_injected_sign_error_fails_with_first_claim(self, capsys, monkeypatch):
        sabotaged = _code_from_strings(("-XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"))
        monkeypatch.setattr(cli, "pentagon_code", lambda: sabotaged)
        code, report = run_json(capsys, ["verify", "all"])
        assert code == 1
        assert report["passed"] is False
        first_fail = next(c for c in report["claims"] if c["status"] == "fail")
        assert first_fail["claim_id"] == "pentagon-code-reconstruction"
        assert "negative" in first_fail["detail"]

    def test_library_exception_reads_as_a_failed_claim(self, capsys, monkeypatch):
        def boom():
            raise RuntimeError("wired to fail")

        monkeypatch.setattr(cli, "doily_spreads", boom)
        code, report = run_json(capsys, ["verify", "pentagon"])
        assert code == 1
        failed = {c["claim_id"] for c in report["claims"] if c["status"] == "fail"}
        assert failed == {"doily-spread-mub"}
        detail = next(c for c in report["claims"] if c["status"] == "fail")["detail"]
        assert "wired to fail" in detail

    def test_seeded_protocol_suite_is_deterministic(self, capsys, tmp_path):
        code, first = run_json(capsys, ["verify", "protocols", "--seed", "42"])
        assert code == 0
        code = cli.main(
            [
                "verify",
                "protocols",
                "--seed",
                "42",
                "--json",
                "--report-dir",
                str(tmp_path),
            ]
        )
        assert code == 0
        second = json.loads(capsys.readouterr().out)
        assert first["claims"] == second["claims"]
        # the sampled counts are embedded in the uniformity detail line
        uniformity = next(
            c for c in first["claims"] if c["claim_id"] == "protocol-uniformity"
        )
        assert "within 3 sigma" in uniformity["detail"]
        # the report directory holds the delimited claims plus the figures
        csv_text = (tmp_path / "claims.csv").read_text()
        assert csv_text.splitlines()[0] == "claim_id,anchor,status,detail"
        assert len(csv_text.splitlines()) == 1 + len(SUITE_CLAIMS["protocols"])
        assert (tmp_path / "claim_status.png").stat().st_size > 0
        assert (tmp_path / "outcome_frequencies.png").stat().st_size > 0

    def test_report_dir_without_sampling_has_no_frequency_figure(
        self, capsys, tmp_path
    ):
        code = cli.main(["verify", "geometry", "--report-dir", str(tmp_path)])
        assert code == 0
        capsys.readouterr()
        assert (tmp_path / "claims.csv").exists()
        assert (tmp_path / "claim_status.png").exists()
        assert not (tmp_path / "outcome_frequencies.png").exists()


# --- export ------------------------------------------------------------------


POINT_RE = re.compile(r'^\s*(p\d+) \[label="([^"]+)"')
LINE_RE = re.compile(r"^\s*(l\d+) \[kind=line.*negative=(true|false)")
EDGE_RE = re.compile(r"^\s*(l\d+) -- (p\d+);$")


def parse_dot(text):
    points, lines, edges = {}, {}, {}
    for row in text.splitlines():
        if m := POINT_RE.match(row):
            points[m.group(1)] = m.group(2)
        elif m := LINE_RE.match(row):
            lines[m.group(1)] = m.group(2) == "true"
        elif m := EDGE_RE.match(row):
            edges.setdefault(m.group(1), set()).add(m.group(2))
    return points, lines, edges


class TestExport:
    @pytest.mark.parametrize("object_id", cli.EXPORT_OBJECTS)
    def test_dot_and_json_carry_identical_incidence(self, object_id, capsys):
        assert cli.main(["export", object_id, "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert cli.main(["export", object_id]) == 0
        points, lines, edges = parse_dot(capsys.readouterr().out)
        assert points == {p["id"]: p["label"] for p in payload["points"]}
        assert lines == {l["id"]: l["negative"] for l in payload["lines"]}
        assert edges == {l["id"]: set(l["points"]) for l in payload["lines"]}

    def test_doily_2q_counts(self, capsys):
        assert cli.main(["export", "doily-2q", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["points"]) == 15
        assert len(payload["lines"]) == 15
        assert sum(l["negative"] for l in payload["lines"]) == 3
        assert {p["label"] for p in payload["points"]} == {
            a + b for a in "IXYZ" for b in "IXYZ" if a + b != "II"
        }

    def test_doily_3q_signs_ride_on_the_right_labels(self, capsys):
        assert cli.main(["export", "doily-3q", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        labels = [p["label"] for p in payload["points"]]
        assert all(len(l.lstrip("-")) == 3 for l in labels)
        assert sum(l["negative"] for l in payload["lines"]) == 3

    def test_troily_has_dual_labels_and_shared_negatives(self, capsys):
        assert cli.main(["export", "troily", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        doily = embedded_central_doily()
        for point, left in zip(payload["points"], doily.left_labels):
            assert point["label_3q"] == left.symbols()
            assert len(point["label"].lstrip("-")) == 4
            assert point["element"].lstrip("-").endswith("I")
        negatives = [l["id"] for l in payload["lines"] if l["negative"]]
        assert len(negatives) == 3
        # the three-qubit labelling marks the same lines
        left_neg = [
            f"l{i}" for i, c in enumerate(doily.left_contexts) if c.sign < 0
        ]
        assert negatives == left_neg

    def test_klein_doily_points_are_distinct_quadric_coordinates(self, capsys):
        assert cli.main(["export", "klein-doily", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        labels = {p["label"] for p in payload["points"]}
        assert len(labels) == 15
        assert all(re.fullmatch(r"[01]{6}", l) for l in labels)
        assert all(len(p["source"].split(",")) == 3 for p in payload["points"])
        assert len(payload["lines"]) == 15
        assert not any(l["negative"] for l in payload["lines"])

    def test_heptaly_groups_by_identity_class(self, capsys):
        assert cli.main(["export", "heptaly", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["class_sizes"] == {"0": 18, "1": 33, "2": 9, "3": 3}
        by_class = {}
        for point in payload["points"]:
            by_class[point["class"]] = by_class.get(point["class"], 0) + 1
        assert by_class == {0: 18, 1: 33, 2: 9, 3: 3}
        assert len(payload["points"]) == 63
        assert len(payload["lines"]) == 315
        assert sum(l["negative"] for l in payload["lines"]) == 90

    def test_heptaly_dot_clusters(self, capsys):
        assert cli.main(["export", "heptaly"]) == 0
        out = capsys.readouterr().out
        for slots, size in ((0, 18), (1, 33), (2, 9), (3, 3)):
            assert f"subgraph cluster_identity_{slots}" in out
            assert f"identity in {slots} slots ({size} points)" in out

    def test_unknown_object_is_a_usage_error(self):
        with pytest.raises(SystemExit) as info:
            cli.main(["export", "hexaly"])
        assert info.value.code == 2

    def test_out_writes_the_dot_file(self, capsys, tmp_path):
        target = tmp_path / "doily.dot"
        assert cli.main(["export", "doily-2q", "--out", str(target)]) == 0
        assert capsys.readouterr().out == ""
        assert target.read_text().startswith('graph "doily-2q" {')


# --- protocol ----------------------------------------------------------------


class TestProtocol:
    def test_transcript_shape_and_determinism(self, capsys):
        argv = ["protocol", "pentagon-chi", "--secret", "1/sqrt2,i/sqrt2", "--seed", "11"]
        assert cli.main(argv) == 0
        first = capsys.readouterr().out
        assert cli.main(argv) == 0
        assert capsys.readouterr().out == first
        transcript = json.loads(first)
        assert set(transcript) == {
            "spec_id",
            "seed",
            "outcome",
            "probability",
            "correction",
            "success",
        }
        assert transcript["spec_id"] == "pentagon-chi"
        assert transcript["seed"] == 11
        assert transcript["probability"] == "1/4"
        assert transcript["success"] is True
        assert set(transcript["outcome"]) <= {"+", "-"}

    @pytest.mark.parametrize(
        "secret",
        ["1,0", "0,1", "1/sqrt2,-1/sqrt2", "(1+i)/2,1/sqrt2", "i/sqrt2,(1-i)/2"],
    )
    def test_exact_secret_grammar(self, secret, capsys):
        assert cli.main(["protocol", "heptagon-green", "--secret", secret]) == 0
        assert json.loads(capsys.readouterr().out)["success"] is True

    def test_unnormalized_secret_is_a_usage_error(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["protocol", "heptagon-blue", "--secret", "1,1"])
        assert info.value.code == 2
        assert "not normalized" in capsys.readouterr().err

    @pytest.mark.parametrize("bad", ["1", "2,0", "1/3,0", "x,y", "1,0,0"])
    def test_unparsable_secret_is_a_usage_error(self, bad):
        with pytest.raises(SystemExit) as info:
            cli.main(["protocol", "pentagon-branching", "--secret", bad])
        assert info.value.code == 2

    def test_unknown_spec_id_is_a_usage_error(self):
        with pytest.raises(SystemExit) as info:
            cli.main(["protocol", "octagon", "--random"])
        assert info.value.code == 2

    def test_secret_and_random_are_exclusive(self):
        with pytest.raises(SystemExit) as info:
            cli.main(["protocol", "pentagon-chi", "--secret", "1,0", "--random"])
        assert info.value.code == 2

    def test_random_secret_is_seeded(self, capsys):
        argv = ["protocol", "heptagon-red-5", "--random", "--seed", "5"]
        assert cli.main(argv) == 0
        first = capsys.readouterr().out
        assert cli.main(argv) == 0
        assert capsys.readouterr().out == first
        assert json.loads(first)["success"] is True

    def test_out_writes_the_transcript(self, capsys, tmp_path):
        target = tmp_path / "round.json"
        argv = ["protocol", "pentagon-branching", "--secret", "0,1", "--out", str(target)]
        assert cli.main(argv) == 0
        assert capsys.readouterr().out == ""
        assert json.loads(target.read_text())["spec_id"] == "pentagon-branching"


# --- secret parser unit checks -------------------------------------------------


class TestParseSecret:
    def test_exact_values(self):
        secret = cli.parse_secret("1/sqrt2,-1/sqrt2")
        assert secret.a == Amplitude(0, 0, 1, 0, 1)
        assert secret.b == -Amplitude(0, 0, 1, 0, 1)
        secret = cli.parse_secret("1,0")
        assert secret.a == ONE and secret.b == Amplitude()
        secret = cli.parse_secret("(1+i)/2,i/sqrt2")
        assert secret.a == Amplitude(1, 1, 0, 0, 1)
        assert secret.b == Amplitude(0, 0, 0, 1, 1)

    def test_norm_is_enforced_exactly(self):
        with pytest.raises(ValueError, match="not normalized"):
            cli.parse_secret("1/sqrt2,1/2")
        with pytest.raises(ValueError, match="coefficient"):
            cli.parse_secret("7,0")
        with pytest.raises(ValueError, match="denominator"):
            cli.parse_secret("1/sqrt3,0")
        with pytest.raises(ValueError, match="two comma-separated"):
            cli.parse_secret("1")
