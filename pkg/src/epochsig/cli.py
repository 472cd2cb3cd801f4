"""Command line front end.

Every command prints one machine-readable JSON object to stdout, and
accept/reject decisions carry the reason string from the module that
made them.  Exit codes: 0 for success or an accepting verification, 1
for a rejection or refused operation, 2 for usage and file problems.
The default parameter file can be set once via the SAS_PARAMS
environment variable instead of passing --params everywhere.

Secret material never reaches stdout except under `keygen --reveal`;
escrow registration writes secrets only to the escrow file.

Commands taking randomness accept --seed; a seeded run writes
byte-identical artifacts.  Parameter setup is deterministic in the
period count even without a seed, so reruns reproduce the same file.
"""

import os
import random
import time

import click

from . import formats
from .bench import render_figure, run_comparison, write_csv, write_gnuplot_dat
from .games import (
    HonestEufChallenger,
    advantage_terms,
    forging_adversary,
    replay_adversary,
    run_reduction_once,
    uncertified_coalition_adversary,
)
from .groups import generate_context
from .ps_sig import vector_check, vector_records
from .registry import KeyRegistry, certified_aggregate_verify_with_reason, pop_prove
from .sas import (
    AggregationError,
    sas_aggregate,
    sas_aggregate_verify_with_reason,
    sas_keygen,
    sas_setup,
    sas_sign,
    sas_verify_with_reason,
)

_CTX = None


def _ctx():
    global _CTX
    if _CTX is None:
        _CTX = generate_context()
    return _CTX


class _Fail(click.ClickException):
    exit_code = 2


def _emit(obj, code=None):
    click.echo(formats.canonical_json(obj), nl=False)
    if code is not None:
        raise SystemExit(code)


def _rng(seed):
    return random.Random(seed) if seed is not None else None


def _read(path, kind):
    try:
        return formats.read_json(path)
    except (OSError, ValueError) as exc:
        raise _Fail(f"cannot read {kind} file {path}: {exc}")


def _decode(fn, data, kind):
    try:
        return fn(data)
    except (KeyError, ValueError) as exc:
        raise _Fail(f"bad {kind} file: {exc}")


def _load_params(path):
    if path is None:
        raise click.UsageError("no parameter file; pass --params or set SAS_PARAMS")
    return _decode(lambda d: formats.params_from_dict(_ctx(), d), _read(path, "params"), "params")


def _message_bytes(message, message_hex):
    if (message is None) == (message_hex is None):
        raise click.UsageError("provide exactly one of --message or --message-hex")
    if message is not None:
        return message.encode()
    try:
        return bytes.fromhex(message_hex)
    except ValueError as exc:
        raise click.UsageError(f"bad --message-hex: {exc}")


_params_option = click.option(
    "--params",
    "params_path",
    envvar="SAS_PARAMS",
    type=click.Path(),
    help="Parameter file (or set SAS_PARAMS).",
)
_seed_option = click.option("--seed", type=int, default=None, help="Deterministic RNG seed.")


@click.group()
def main():
    """Synchronized aggregate signatures with two-pairing verification."""


@main.command()
@click.option("--periods", type=int, required=True, help="Number of signing periods T.")
@click.option("--out", type=click.Path(), required=True)
@_seed_option
def setup(periods, out, seed):
    """Create a parameter file.  Deterministic for a given T unless seeded."""
    if periods < 1:
        raise click.UsageError("--periods must be positive")
    rng = _rng(seed) if seed is not None else random.Random(f"epochsig-setup-{periods}")
    params = sas_setup(_ctx(), periods, rng)
    formats.write_json(out, formats.params_to_dict(params))
    _emit({"ok": True, "params": out, "periods": periods})


@main.command()
@_params_option
@click.option("--out", type=click.Path(), required=True)
@click.option("--reveal", is_flag=True, help="Also print the secret scalars.")
@_seed_option
def keygen(params_path, out, reveal, seed):
    """Create a key file (secret, public, signing high-water mark)."""
    params = _load_params(params_path)
    sk, pk = sas_keygen(params, _rng(seed))
    formats.write_json(out, formats.key_to_dict(sk, pk, 0))
    result = {"ok": True, "key": out, "pk_hex": formats.pk_to_hex(pk)}
    if reveal:
        result["secret_x"] = sk.x.to_bytes().hex()
        result["secret_y"] = sk.y.to_bytes().hex()
    _emit(result)


@main.command()
@_params_option
@click.option("--registry", "registry_path", type=click.Path(), required=True)
@click.option("--key", "key_path", type=click.Path(), required=True)
@click.option(
    "--mode",
    type=click.Choice(["escrow", "pop"]),
    default="escrow",
    show_default=True,
    help="Certify by key escrow or by a possession proof.",
)
@_seed_option
def register(params_path, registry_path, key_path, mode, seed):
    """Certify a key into a registry file."""
    params = _load_params(params_path)
    sk, pk, _ = _decode(formats.key_from_dict, _read(key_path, "key"), "key")
    escrow_path = registry_path + ".escrow"
    if os.path.exists(registry_path):
        reg = KeyRegistry.load(
            params,
            registry_path,
            escrow_path if os.path.exists(escrow_path) else None,
        )
    else:
        reg = KeyRegistry(params)
    if mode == "escrow":
        ok = reg.register_escrow(pk, sk)
        reason = "accept" if ok else "inconsistent-key"
    else:
        ok = reg.register_with_proof(pk, pop_prove(params, sk, pk, _rng(seed)))
        reason = "accept" if ok else "invalid-possession-proof"
    if not ok:
        _emit({"ok": False, "reason": reason}, code=1)
    reg.save(registry_path, escrow_path if mode == "escrow" or os.path.exists(escrow_path) else None)
    _emit({"ok": True, "registry": registry_path, "mode": mode, "keys": len(reg)})


@main.command()
@_params_option
@click.option("--key", "key_path", type=click.Path(), required=True)
@click.option("--message", default=None)
@click.option("--message-hex", default=None)
@click.option("--period", type=int, default=None)
@click.option(
    "--period-from-unix-epoch",
    type=int,
    default=None,
    metavar="SECONDS",
    help="Derive the period from the current time at this granularity.",
)
@click.option("--out", type=click.Path(), required=True)
def sign(params_path, key_path, message, message_hex, period, period_from_unix_epoch, out):
    """Sign a message for one period; refuses to reuse a period."""
    params = _load_params(params_path)
    msg = _message_bytes(message, message_hex)
    if (period is None) == (period_from_unix_epoch is None):
        raise click.UsageError("provide exactly one of --period or --period-from-unix-epoch")
    if period is None:
        if period_from_unix_epoch < 1:
            raise click.UsageError("--period-from-unix-epoch must be positive")
        period = int(time.time()) // period_from_unix_epoch + 1
    sk, pk, last = _decode(formats.key_from_dict, _read(key_path, "key"), "key")
    if period <= last:
        _emit({"ok": False, "reason": "period-reused", "period": period, "last_signed": last}, code=1)
    try:
        sig = sas_sign(params, sk, period, msg)
    except ValueError:
        _emit({"ok": False, "reason": "period-out-of-range", "period": period}, code=1)
    formats.write_json(out, formats.signature_to_dict(sig))
    formats.write_json(key_path, formats.key_to_dict(sk, pk, period))
    _emit({"ok": True, "sig": out, "period": period})


@main.command()
@_params_option
@click.option("--pk-hex", default=None)
@click.option("--pk-file", type=click.Path(), default=None, help="Key file to take the public half from.")
@click.option("--message", default=None)
@click.option("--message-hex", default=None)
@click.option("--sig", "sig_path", type=click.Path(), required=True)
def verify(params_path, pk_hex, pk_file, message, message_hex, sig_path):
    """Verify a single signature."""
    params = _load_params(params_path)
    msg = _message_bytes(message, message_hex)
    if (pk_hex is None) == (pk_file is None):
        raise click.UsageError("provide exactly one of --pk-hex or --pk-file")
    if pk_file is not None:
        _, pk, _ = _decode(formats.key_from_dict, _read(pk_file, "key"), "key")
    else:
        pk = _decode(formats.pk_from_hex, pk_hex, "public key")
    sig = _decode(formats.signature_from_dict, _read(sig_path, "signature"), "signature")
    ok, reason = sas_verify_with_reason(params, pk, msg, sig)
    _emit({"ok": ok, "reason": reason, "period": sig.t}, code=0 if ok else 1)


@main.command()
@click.option("--bundle", "bundle_path", type=click.Path(), required=True)
@click.option("--pk-hex", required=True)
@click.option("--message", default=None)
@click.option("--message-hex", default=None)
@click.option("--sig", "sig_path", type=click.Path(), required=True)
def bundle(bundle_path, pk_hex, message, message_hex, sig_path):
    """Append one signature to a bundle awaiting aggregation."""
    msg = _message_bytes(message, message_hex)
    pk = _decode(formats.pk_from_hex, pk_hex, "public key")
    sig = _decode(formats.signature_from_dict, _read(sig_path, "signature"), "signature")
    if os.path.exists(bundle_path):
        data = _read(bundle_path, "bundle")
    else:
        data = formats.bundle_new(sig.t)
    try:
        formats.bundle_add(data, pk, msg, sig)
    except ValueError:
        _emit(
            {"ok": False, "reason": "period-mismatch", "bundle_period": data.get("period"), "sig_period": sig.t},
            code=1,
        )
    formats.write_json(bundle_path, data)
    _emit({"ok": True, "bundle": bundle_path, "entries": len(data["entries"]), "period": data["period"]})


@main.command()
@_params_option
@click.option("--bundle", "bundle_path", type=click.Path(), required=True)
@click.option("--out", type=click.Path(), required=True)
@click.option(
    "--skip-member-check",
    is_flag=True,
    help="Aggregate without verifying each member first.",
)
def aggregate(params_path, bundle_path, out, skip_member_check):
    """Fold a bundle into one aggregate signature."""
    params = _load_params(params_path)
    entries = _decode(formats.bundle_entries, _read(bundle_path, "bundle"), "bundle")
    try:
        agg = sas_aggregate(params, entries, check_members=not skip_member_check)
    except AggregationError as exc:
        _emit({"ok": False, "reason": exc.reason}, code=1)
    pairs = [(pk, msg) for pk, msg, _ in entries]
    formats.write_json(out, formats.aggregate_to_dict(pairs, agg))
    _emit({"ok": True, "aggregate": out, "entries": len(pairs), "period": agg.t})


@main.command()
@_params_option
@click.option("--agg", "agg_path", type=click.Path(), required=True)
@click.option(
    "--registry",
    "registry_path",
    type=click.Path(),
    default=None,
    help="Also require every key to be certified in this registry.",
)
def aver(params_path, agg_path, registry_path):
    """Verify an aggregate signature."""
    params = _load_params(params_path)
    pairs, agg = _decode(formats.aggregate_from_dict, _read(agg_path, "aggregate"), "aggregate")
    if registry_path is not None:
        try:
            reg = KeyRegistry.load(params, registry_path)
        except (OSError, ValueError, KeyError) as exc:
            raise _Fail(f"cannot read registry {registry_path}: {exc}")
        ok, reason = certified_aggregate_verify_with_reason(reg, pairs, agg)
    else:
        ok, reason = sas_aggregate_verify_with_reason(params, pairs, agg)
    _emit({"ok": ok, "reason": reason, "entries": len(pairs), "period": agg.t}, code=0 if ok else 1)


@main.command()
@click.option("--out", type=click.Path(), default=None)
@click.option("--count", type=int, default=16, show_default=True)
@click.option("--check", "check_path", type=click.Path(), default=None)
@_seed_option
def vectors(out, count, check_path, seed):
    """Write or re-check a signature test-vector file."""
    if (out is None) == (check_path is None):
        raise click.UsageError("provide exactly one of --out or --check")
    ctx = _ctx()
    if out is not None:
        records = vector_records(ctx, count, _rng(seed))
        formats.write_jsonl(
            out,
            records,
            banner="alternating valid and broken randomizable-signature records",
        )
        _emit({"ok": True, "vectors": out, "count": count})
        return
    try:
        records = formats.read_jsonl(check_path)
    except OSError as exc:
        raise _Fail(f"cannot read vectors {check_path}: {exc}")
    bad = sum(0 if vector_check(ctx, r) else 1 for r in records)
    _emit({"ok": bad == 0, "checked": len(records), "bad": bad}, code=0 if bad == 0 else 1)


_ADVERSARIES = {
    "forging": lambda leak, rng: forging_adversary(leak, rng),
    "replay": lambda leak, rng: replay_adversary(rng),
    "uncertified": lambda leak, rng: uncertified_coalition_adversary(leak, rng),
}


@main.command()
@click.argument("kind", type=click.Choice(["honest", "reduction"]))
@click.option(
    "--adversary",
    "adversary_name",
    type=click.Choice(sorted(_ADVERSARIES)),
    default="forging",
    show_default=True,
)
@click.option("--runs", type=int, default=5, show_default=True)
@click.option("--max-periods", type=int, default=16, show_default=True)
@_seed_option
def game(kind, adversary_name, runs, max_periods, seed):
    """Play the unforgeability game or the reduction on top of it."""
    ctx = _ctx()
    rng = _rng(seed) or random.SystemRandom()
    factory = _ADVERSARIES[adversary_name]
    out = {"ok": True, "kind": kind, "adversary": adversary_name, "runs": []}
    counts = {"q_sign": 0, "q_h2": 0}
    wins = 0
    for _ in range(runs):
        if kind == "honest":
            ch = HonestEufChallenger(ctx, max_periods, rng)
            forgery = factory(ch.leak_exponents(), rng)(ch)
            euf = ch.judge(forgery)
            counts = {"q_sign": ch.q_sign, "q_skip": ch.q_skip, "q_h2": ch.q_h2}
            wins += euf.win
            out["runs"].append(
                {
                    "verifies": euf.verifies,
                    "certified": euf.all_certified,
                    "included": euf.target_included,
                    "fresh": euf.fresh,
                    "win": euf.win,
                }
            )
        else:
            res = run_reduction_once(ctx, max_periods, factory, rng)
            counts = {k: res[k] for k in ("q_sign", "q_skip", "q_h2")}
            wins += res["won"]
            out["runs"].append({"won": res["won"], "abort": res["abort"]})
    out["wins"] = wins
    out["queries"] = counts
    out["loss_terms"] = advantage_terms(counts["q_sign"], counts["q_h2"], ctx.order)
    _emit(out)


@main.command()
@click.option("--sizes", default="1,10,100", show_default=True, help="Comma-separated aggregate sizes.")
@click.option("--trials", type=int, default=3, show_default=True)
@click.option("--out", type=click.Path(), required=True, help="CSV report path.")
@click.option("--fig", type=click.Path(), default=None, help="Figure path (default: CSV path with .png).")
@click.option("--dat", type=click.Path(), default=None, help="Also write a gnuplot-ready table here.")
@_seed_option
def bench(sizes, trials, out, fig, dat, seed):
    """Measure both schemes and write the report files."""
    try:
        parsed = tuple(int(s) for s in sizes.split(",") if s.strip())
    except ValueError:
        raise click.UsageError(f"bad --sizes {sizes!r}")
    if not parsed or min(parsed) < 1:
        raise click.UsageError("--sizes needs positive integers")
    report = run_comparison(_ctx(), sizes=parsed, trials=trials, rng=_rng(seed))
    write_csv(report, out)
    fig_path = fig if fig is not None else (out.rsplit(".", 1)[0] + ".png")
    render_figure(report, fig_path)
    result = {"ok": True, "csv": out, "figure": fig_path}
    if dat is not None:
        write_gnuplot_dat(report, dat)
        result["dat"] = dat
    _emit(result)


if __name__ == "__main__":
    main()
