"""Command-line interface.

Exit status: 0 success, 1 domain error (inputs outside a model's range),
2 I/O, schema or usage error. JSON reports carry ``schema_version`` and are
written with sorted keys so identical inputs give identical bytes.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from pathlib import Path

import numpy as np

from . import carbonation, chloride, fatigue, mechanisms
from .empirical import markov, regression
from .errors import DegenerateInputWarning, DomainError, InfeasibleError, SchemaError, UnboundedError
from .inventory import filter_deterioration_pairs, ingest_nbi
from .metrics import metrics as score, one_vs_rest, r2
from .montecarlo import DeckSimConfig, simulate_deck, time_to_fraction
from .planning import ip as ip_mod
from .planning import lp as lp_mod
from .planning.replacement import optimal_replacement_interval, polynomial_cost
from .units import ServiceLifeBreakdown

SCHEMA_VERSION = 1


def _clean(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, (np.floating,)):
        return _clean(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def dumps(obj) -> str:
    payload = {"schema_version": SCHEMA_VERSION, **obj}
    return json.dumps(_clean(payload), sort_keys=True, indent=2, allow_nan=False) + "\n"


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: top level must be an object")
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise SchemaError(f"{path}: unsupported schema_version {version}")
    return data


def _section(d: dict, key: str) -> dict:
    try:
        v = d[key]
    except KeyError:
        raise SchemaError(f"missing section {key!r}") from None
    if not isinstance(v, dict):
        raise SchemaError(f"section {key!r} must be an object")
    return v


def _build(cls, fields: dict, what: str):
    try:
        return cls(**fields)
    except TypeError as exc:
        raise SchemaError(f"{what}: {exc}") from None


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------- predict


def _predict_chloride(p):
    env = _build(chloride.ChlorideEnvironment, _section(p, "environment"), "environment")
    geom = _build(chloride.RebarGeometry, _section(p, "rebar"), "rebar")
    kin = _build(chloride.CorrosionKinetics, _section(p, "kinetics"), "kinetics")
    choices = _build(chloride.StageChoices, p.get("models", {}), "models")
    return {"mechanism": "chloride", "breakdown": chloride.total_chloride_life(env, geom, kin, choices).to_dict()}


def _predict_carbonation(p):
    model = p.get("model", "papadakis")
    env = _section(p, "environment")
    cover = float(env.get("cover", 0.0))
    if model == "papadakis":
        conc = _build(carbonation.PapadakisConcrete, _section(p, "concrete"), "concrete")
        cenv = _build(carbonation.CarbonationEnvironment, env, "environment")
        t_cr = carbonation.papadakis_tcr(conc, cenv, cover / 1000.0)
        t1 = t_cr / carbonation.SECONDS_PER_JULIAN_YEAR
    elif model == "iaea":
        t1 = carbonation.time_iaea(cover, int(p["grade"]))
    elif model == "hookman":
        t1 = carbonation.tc_hookman(cover, float(p["Rc"]))
    else:
        raise DomainError(f"unknown carbonation model {model!r}")
    t2 = carbonation.propagation_morinaga(cover, float(env["RH"]))
    ids = {"t1": model, "t2": "morinaga", "t3": "none"}
    flags = () if math.isfinite(t2) else ("no-propagation",)
    return {"mechanism": "carbonation", "breakdown": ServiceLifeBreakdown.compose(t1, t2, 0.0, ids, flags).to_dict()}


def _predict_sulfate(p):
    fields = {k: v for k, v in p.items() if k not in ("schema_version", "attack_depth")}
    sp = _build(mechanisms.SulfateParams, fields, "sulfate")
    rate = mechanisms.sulfate_rate_mm_per_year(sp)
    out = {"mechanism": "sulfate", "rate_m_per_s": mechanisms.sulfate_rate(sp), "rate_mm_per_yr": rate}
    if "attack_depth" in p:
        life = float(p["attack_depth"]) / rate if rate > 0 else math.inf
        out["breakdown"] = ServiceLifeBreakdown.compose(life, 0.0, 0.0, {"t1": "atkinson_hearne"}).to_dict()
    return out


def _predict_freezethaw(p):
    life = mechanisms.freeze_thaw_life(float(p.get("C_eq", 6.5)), float(p["N_indoor"]), float(p.get("N_annual", 200.0)))
    out = {"mechanism": "freezethaw", "breakdown": ServiceLifeBreakdown.compose(life, 0.0, 0.0, {"t1": "chen_qiao"}).to_dict()}
    if "shuman" in p:
        out["annual_degradation"] = mechanisms.freeze_thaw_degradation_shuman(
            _build(mechanisms.FreezeThawParams, p["shuman"], "shuman")
        )
    return out


def _predict_asr(p):
    obs = _build(mechanisms.AsrObservation, {k: p[k] for k in ("rating", "t0", "tt") if k in p}, "asr")
    remaining = mechanisms.asr_years_remaining(obs)
    return {
        "mechanism": "asr",
        "rate": mechanisms.asr_rate(obs),
        "years_remaining": remaining,
        "flags": [] if math.isfinite(remaining) else ["open-ended"],
    }


def _predict_fatigue(p):
    if "history" in p:
        history = [float(v) for v in p["history"]]
    elif "history_csv" in p:
        history = fatigue.read_stress_history(Path(p["history_csv"]).read_text(encoding="utf-8"))
    else:
        raise SchemaError("fatigue parameters need 'history' or 'history_csv'")
    counters = {"rainflow": fatigue.rainflow_count, "simple_range": fatigue.simple_range_count, "peak": fatigue.peak_count}
    method = p.get("counting", "rainflow")
    if method not in counters:
        raise DomainError(f"unknown counting method {method!r}")
    hist = counters[method](history)
    detail = _build(fatigue.DetailConstant, _section(p, "detail"), "detail")
    out = {
        "mechanism": "fatigue",
        "histogram": {"S_r": list(hist.S_r), "n": list(hist.n)},
        "damage": fatigue.miner_damage(hist, detail, p.get("cafl_policy", "infinite")),
        "effective_stress_range": fatigue.effective_stress_range(hist) if hist.total_cycles > 0 else None,
    }
    if "remaining_life" in p:
        r = p["remaining_life"]
        S_r = float(r.get("S_r", out["effective_stress_range"] or 0.0))
        out["remaining_life"] = fatigue.aashto_remaining_life(
            float(r.get("R_R", 1.0)), detail.A, float(r.get("n", 1.0)), float(r["ADTT_SL"]),
            float(r.get("R_s", 1.0)), S_r, float(r.get("a", 0.0)),
        )
    return out


PREDICTORS = {
    "chloride": _predict_chloride,
    "carbonation": _predict_carbonation,
    "sulfate": _predict_sulfate,
    "freezethaw": _predict_freezethaw,
    "asr": _predict_asr,
    "fatigue": _predict_fatigue,
}


def cmd_predict(args):
    params = _load_json(args.params)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DegenerateInputWarning)
        try:
            result = PREDICTORS[args.mechanism](params)
        except KeyError as exc:
            raise SchemaError(f"missing parameter {exc}") from None
    result["warnings"] = sorted({str(w.message) for w in caught if issubclass(w.category, DegenerateInputWarning)})
    _emit(dumps(result), args.out)


# ---------------------------------------------------------------- empirical / markov


def _model_fn(args):
    kw = {"adtt": args.adtt} if args.adtt is not None else {}
    if args.coefficients:
        return regression.polynomial_from_sequence(args.coefficients)
    return regression.catalog_model(args.model, **kw)


def cmd_empirical(args):
    f = _model_fn(args)
    if args.action == "eval":
        out = {"model": args.model, "age": args.age, "rating": f(args.age)}
    else:
        life = regression.service_life_first_crossing(f, args.threshold, args.horizon)
        out = {"model": args.model, "threshold": args.threshold, "horizon": args.horizon, "service_life": life}
    _emit(dumps(out), args.out)


def cmd_markov(args):
    data = _load_json(args.input)
    try:
        if args.action == "step":
            dist = markov.ertekin_propagate(data["alpha"], data["tpm"], int(data.get("steps", 1)))
            out = {"distribution": dist}
        else:
            P, obj = markov.hallberg_calibrate(
                data["curve"], int(data["states"]), data.get("values"), seed=args.seed
            )
            out = {"tpm": P, "objective": obj}
    except KeyError as exc:
        raise SchemaError(f"missing field {exc}") from None
    _emit(dumps(out), args.out)


# ---------------------------------------------------------------- planning


def cmd_plan(args):
    data = _load_json(args.input)
    out_dir = Path(args.out) if args.out else None
    if args.action == "lp":
        inst = lp_mod.PlanningInstance.from_dict(data)
        sol = lp_mod.solve(inst)
        res = {"solution": sol.to_dict(), "residuals": lp_mod.verify_solution(inst, sol)}
        _write_plan(out_dir, res, ("group", "state", "period", "share"), sol.trajectory_rows())
    elif args.action == "ip":
        inst = ip_mod.IpInstance.from_dict(data)
        sol = ip_mod.solve_ip(inst)
        rows = [(a + 1, t + 1, float(sol.s[a, t])) for a in range(sol.s.shape[0]) for t in range(sol.s.shape[1])]
        _write_plan(out_dir, {"solution": sol.to_dict()}, ("facility", "period", "condition"), rows)
    elif args.action == "replace":
        try:
            c = polynomial_cost(data["cost_coefficients"])
            t, C = optimal_replacement_interval(c, float(data["C_r"]), tuple(data["bounds"]))
        except KeyError as exc:
            raise SchemaError(f"missing field {exc}") from None
        _emit(dumps({"t_r": t, "cost_rate": C}), str(out_dir / "solution.json") if out_dir else None)
    else:
        inst = lp_mod.PlanningInstance.from_dict(data)
        sol_data = _load_json(args.solution)
        sol = lp_mod.PolicySolution.from_dict(sol_data.get("solution", sol_data))
        residuals = lp_mod.verify_solution(inst, sol)
        ok = all(v <= 1e-8 for v in residuals.values())
        _emit(dumps({"residuals": residuals, "feasible": ok}), None)
        if not ok:
            raise DomainError("solution violates the instance constraints")


def _write_plan(out_dir, payload, header, rows):
    if out_dir is None:
        sys.stdout.write(dumps(payload))
        return
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "solution.json").write_text(dumps(payload), encoding="utf-8")
    (out_dir / "trajectory.csv").write_text(_csv_text(header, rows), encoding="utf-8")


# ---------------------------------------------------------------- simulate / ingest / metrics


def cmd_simulate(args):
    data = _load_json(args.config)
    data.pop("schema_version", None)
    if args.seed is not None:
        data["seed"] = args.seed
    try:
        cfg = DeckSimConfig.from_dict(data)
    except TypeError as exc:
        raise SchemaError(str(exc)) from None
    series = simulate_deck(cfg, workers=args.workers)
    if args.format == "csv":
        _emit(series.to_csv(), args.out)
    else:
        out = {"t": series.t, "fraction": series.fraction, "target": cfg.target,
               "time_to_target": time_to_fraction(series, cfg.target), "seed": cfg.seed}
        _emit(dumps(out), args.out)


def cmd_ingest(args):
    mapping = _load_json(args.column_map) if args.column_map else {}
    table, rejects = ingest_nbi(args.csv, mapping.get("columns"), mapping.get("ratings"))
    pairs, dropped = filter_deterioration_pairs(table)
    rows = table.rows()
    header = list(rows[0]) if rows else []
    summary = {
        "rows_in": len(table) + len(rejects),
        "accepted": len(table),
        "rejected": len(rejects),
        "rejects": [r.to_dict() for r in rejects],
        "deterioration_pairs": len(pairs),
        "improvement_pairs_dropped": dropped,
    }
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "records.csv").write_text(_csv_text(header, [[r[h] for h in header] for r in rows]), encoding="utf-8")
        (out / "rejects.json").write_text(dumps({"rejects": summary["rejects"]}), encoding="utf-8")
        (out / "summary.json").write_text(dumps(summary), encoding="utf-8")
    else:
        sys.stdout.write(dumps(summary))


def cmd_metrics(args):
    with open(args.pred, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if not reader.fieldnames or not {"actual", "predicted"} <= set(reader.fieldnames):
            raise SchemaError("prediction CSV needs 'actual' and 'predicted' columns")
        rows = list(reader)
    y = [r["actual"].strip() for r in rows]
    yh = [r["predicted"].strip() for r in rows]
    per_class = {str(k): score(cm) for k, cm in one_vs_rest(y, yh).items()}
    out = {"n": len(rows), "per_class": per_class, "accuracy": (sum(a == b for a, b in zip(y, yh)) / len(y)) if y else None}
    try:
        out["r2"] = r2([float(v) for v in y], [float(v) for v in yh]) if y else None
    except ValueError:
        out["r2"] = None
    if args.positive is not None:
        out["positive"] = args.positive
        out["metrics"] = per_class.get(args.positive)
    _emit(dumps(out), args.out)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bridgelife", description="Bridge service-life models and maintenance planning.")
    sub = p.add_subparsers(dest="command", required=True)

    pr = sub.add_parser("predict", help="mechanistic service-life prediction from a parameter file")
    pr.add_argument("mechanism", choices=sorted(PREDICTORS))
    pr.add_argument("-p", "--params", required=True)
    pr.add_argument("--out")
    pr.set_defaults(func=cmd_predict)

    em = sub.add_parser("empirical", help="evaluate catalog condition-rating models")
    em.add_argument("action", choices=["eval", "life"])
    em.add_argument("--model", default="jiang.concrete.superstructure")
    em.add_argument("--coefficients", type=float, nargs="+", help="polynomial C0..Cn instead of a catalog model")
    em.add_argument("--adtt", type=float)
    em.add_argument("--age", type=float, default=0.0)
    em.add_argument("--threshold", type=float, default=3.0)
    em.add_argument("--horizon", type=float, default=100.0)
    em.add_argument("--out")
    em.set_defaults(func=cmd_empirical)

    mk = sub.add_parser("markov", help="propagate or calibrate transition matrices")
    mk.add_argument("action", choices=["step", "calibrate"])
    mk.add_argument("-i", "--input", required=True)
    mk.add_argument("--seed", type=int, default=0)
    mk.add_argument("--out")
    mk.set_defaults(func=cmd_markov)

    pl = sub.add_parser("plan", help="maintenance planning")
    pl.add_argument("action", choices=["lp", "ip", "replace", "verify"])
    pl.add_argument("-i", "--input", required=True)
    pl.add_argument("-s", "--solution", help="solution JSON for 'verify'")
    pl.add_argument("--out", help="output directory")
    pl.set_defaults(func=cmd_plan)

    sm = sub.add_parser("simulate", help="Monte Carlo deck simulation")
    sm.add_argument("what", choices=["deck"])
    sm.add_argument("-c", "--config", required=True)
    sm.add_argument("--seed", type=int)
    sm.add_argument("--workers", type=int, default=1)
    sm.add_argument("--format", choices=["json", "csv"], default="csv")
    sm.add_argument("--out")
    sm.set_defaults(func=cmd_simulate)

    ig = sub.add_parser("ingest", help="validate an inventory CSV")
    ig.add_argument("--csv", required=True)
    ig.add_argument("--column-map", help="JSON with optional 'columns' and 'ratings' maps")
    ig.add_argument("--out", help="output directory")
    ig.set_defaults(func=cmd_ingest)

    mt = sub.add_parser("metrics", help="score predictions in a CSV with actual,predicted columns")
    mt.add_argument("--pred", required=True)
    mt.add_argument("--positive", help="label treated as the positive class")
    mt.add_argument("--out")
    mt.set_defaults(func=cmd_metrics)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "plan" and args.action == "verify" and not args.solution:
            raise SchemaError("plan verify needs --solution")
        args.func(args)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, InfeasibleError, UnboundedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
