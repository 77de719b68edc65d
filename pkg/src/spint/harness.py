"""Scenario runner: problem x integrator x parameters -> CSV + diagnostics.

A Scenario names a problem and an integrator and carries either a fixed step
dt or a residual tolerance eps_res (exactly one, matching the integrator
family).  Running it produces a RunRecord whose rows are

    t, <state components>, <invariant diagnostics>, step, cpu_ns

and whose summary (mean step, max/mean invariant error, total CPU) is always
recomputed from the rows, so a CSV round trip is lossless.  The mean error
is the time average (1/t_f) integral of |error| dt, evaluated by the
trapezoid rule on the recorded grid.
"""

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .borel import BplConfig, TaylorGenerator, bpl_step
from .dirac import (
    constrained_energy,
    constraint_residual,
    dirac1_step,
    dirac2_step,
    euler_constrained_control,
)
from .errors import IoFailureError, MismatchedProblemError, ValidationError
from .hamiltonian import HamiltonianSystem
from .problems import (
    FIGURE_EIGHT_PERIOD,
    KdvSpectral,
    angular_momentum,
    double_pendulum,
    double_pendulum_state,
    duffing_H2,
    duffing_I1,
    duffing_case1,
    duffing_case2,
    duffing_chaotic,
    duffing_generator,
    duffing_initial_state,
    duffing_rhs,
    figure_eight_initial,
    harmonic_oscillator,
    kdv_generator,
    kdv_initial,
    kdv_l2_error,
    kdv_rhs,
    lax_eigenvalues,
    nbody_system,
    perturbed_initial,
    quartic_oscillator,
    toda_initial_state,
    toda_system,
)
from .quadrature import gauss_laguerre
from .steppers import (
    ButcherTableau,
    explicit_euler_step,
    implicit_euler_step,
    irk_step,
    rk4_ode_step,
    rk4_step,
    stormer_verlet_step,
    symplectic_euler_step,
)

STEP_INTEGRATORS = ("euler", "ieuler", "sympeuler_a", "sympeuler_b", "verlet",
                    "rk4", "rk4sym")
CONSTRAINED_INTEGRATORS = ("dirac1", "dirac2", "euler_constrained")
ADAPTIVE_INTEGRATORS = ("bpl", "rk4a")


@dataclass
class Scenario:
    """One configured run.  Exactly one of dt / eps_res must be set."""

    problem: str
    integrator: str
    t_final: float
    dt: Optional[float] = None
    eps_res: Optional[float] = None
    order: int = 10
    pade_num: Optional[int] = None
    pade_den: Optional[int] = None
    quad_nodes: int = 20
    stride: int = 1
    out: Optional[str] = None

    def __post_init__(self):
        if (self.dt is None) == (self.eps_res is None):
            raise ValidationError("exactly one of dt / eps_res must be set")
        if not self.t_final > 0:
            raise ValidationError("t_final must be positive")
        adaptive = self.integrator in ADAPTIVE_INTEGRATORS
        if adaptive and self.eps_res is None:
            raise ValidationError(f"{self.integrator} needs eps_res, not dt")
        if not adaptive and self.dt is None:
            raise ValidationError(f"{self.integrator} needs dt, not eps_res")
        if self.dt is not None and not self.dt > 0:
            raise ValidationError("dt must be positive")
        if self.eps_res is not None and not self.eps_res > 0:
            raise ValidationError("eps_res must be positive")
        if self.stride < 1:
            raise ValidationError("stride must be >= 1")


@dataclass
class ProblemSetup:
    """Everything the runner needs to know about a problem id."""

    kind: str  # "ham" | "ode" | "constrained"
    initial: np.ndarray = None
    system: HamiltonianSystem = None
    rhs: callable = None          # rhs(u, t) for ode-style integrators
    generator: TaylorGenerator = None
    invariant_names: tuple = ()
    invariants: callable = None   # invariants(state, t, ref) -> tuple
    constrained: object = None    # ConstrainedSystem for kind == "constrained"
    initial_dirac: object = None
    state_names: tuple = None
    complex_state: bool = False   # record re/im column pairs instead of real parts


def _rel_h(system):
    def inv(u, t, ref):
        return (abs(system.hamiltonian(np.real(u)) - ref) / abs(ref),)
    return inv


def _toda_setup():
    system = toda_system()
    u0 = toda_initial_state()

    def invariants(u, t, ref):
        h0, eig0 = ref
        u = np.real(u)
        eigs = lax_eigenvalues(u)
        return (abs(system.hamiltonian(u) - h0) / abs(h0), *(eigs - eig0))

    setup = ProblemSetup(kind="ham", initial=u0, system=system,
                         rhs=lambda u, t: system.vector_field(u),
                         generator=TaylorGenerator(
                             dim=6, rule=system.taylor_rule,
                             rhs=lambda u, t: system.vector_field(np.real(u))),
                         invariant_names=("err_H", "dlax_1", "dlax_2", "dlax_3"),
                         invariants=invariants)
    setup.ref = (system.hamiltonian(u0), lax_eigenvalues(u0))
    return setup


def _nbody_setup(perturbed=False):
    system = nbody_system(np.ones(3))
    u0 = perturbed_initial() if perturbed else figure_eight_initial()

    def invariants(u, t, ref):
        h0, l0 = ref
        u = np.real(u)
        return (abs(system.hamiltonian(u) - h0) / abs(h0),
                angular_momentum(u, 3) - l0)

    setup = ProblemSetup(kind="ham", initial=u0, system=system,
                         rhs=lambda u, t: system.vector_field(u),
                         invariant_names=("err_H", "dang_mom"),
                         invariants=invariants)
    setup.ref = (system.hamiltonian(u0), angular_momentum(u0, 3))
    return setup


def _pendulum_setup():
    sys_c = double_pendulum()
    st0 = double_pendulum_state()

    def invariants(st, t, ref):
        return (constraint_residual(sys_c, st), constrained_energy(sys_c, st) - ref)

    setup = ProblemSetup(kind="constrained", constrained=sys_c, initial_dirac=st0,
                         invariant_names=("constraint_res", "denergy"),
                         invariants=invariants)
    setup.ref = constrained_energy(sys_c, st0)
    return setup


def _duffing_setup(which, amplitude=None):
    if which == 1:
        prob = duffing_case1()

        def invariants(u, t, ref):
            return (abs(duffing_I1(u, t) - ref),)

        names = ("err_I1",)
    elif which == 2:
        prob = duffing_case2()

        def invariants(u, t, ref):
            return (abs(duffing_H2(u) - ref),)

        names = ("err_H2",)
    else:
        prob = duffing_chaotic(amplitude)
        invariants = None
        names = ()
    u0 = duffing_initial_state()
    setup = ProblemSetup(kind="ode", initial=u0,
                         rhs=lambda u, t: duffing_rhs(prob, np.real(u), t),
                         generator=duffing_generator(prob),
                         invariant_names=names, invariants=invariants,
                         state_names=("u", "du"))
    setup.ref = duffing_I1(u0, 0.0) if which == 1 else (
        duffing_H2(u0) if which == 2 else None)
    return setup


def _kdv_setup(modes=64):
    spec = KdvSpectral(M=modes)
    u0 = kdv_initial(spec)

    def invariants(u, t, ref):
        return (kdv_l2_error(spec, u, t),)

    names = tuple(f"{part}_{m}" for m in spec.modes for part in ("re", "im"))
    setup = ProblemSetup(kind="ode", initial=u0.astype(complex),
                         rhs=lambda u, t: kdv_rhs(spec, u, t),
                         generator=kdv_generator(spec),
                         invariant_names=("l2_err",), invariants=invariants,
                         state_names=names, complex_state=True)
    setup.ref = None
    setup.kdv = spec
    return setup


def _harmonic_setup():
    system = harmonic_oscillator()
    u0 = np.array([1.0, 0.0])
    setup = ProblemSetup(kind="ham", initial=u0, system=system,
                         rhs=lambda u, t: system.vector_field(np.asarray(u)),
                         generator=TaylorGenerator(
                             dim=2, rule=system.taylor_rule,
                             rhs=lambda u, t: np.array([u[1], -u[0]])),
                         invariant_names=("err_H",),
                         invariants=_rel_h(system))
    setup.ref = system.hamiltonian(u0)
    return setup


def _quartic_setup():
    system = quartic_oscillator()
    u0 = np.array([1.0, 0.0])

    def rhs(u, t):
        return np.array([u[1], -u[0] - u[0] ** 3])

    setup = ProblemSetup(kind="ham", initial=u0, system=system,
                         rhs=lambda u, t: system.vector_field(np.real(u)),
                         generator=TaylorGenerator(dim=2, rule=system.taylor_rule,
                                                   rhs=rhs),
                         invariant_names=("err_H",),
                         invariants=_rel_h(system))
    setup.ref = system.hamiltonian(u0)
    return setup


def make_problem(problem_id):
    """Resolve a problem id, e.g. 'toda', 'kdv:32', 'duffing_chaotic:0.5'."""
    name, _, arg = problem_id.partition(":")
    if name == "toda":
        return _toda_setup()
    if name == "nbody":
        return _nbody_setup()
    if name == "nbody_perturbed":
        return _nbody_setup(perturbed=True)
    if name == "pendulum":
        return _pendulum_setup()
    if name == "duffing1":
        return _duffing_setup(1)
    if name == "duffing2":
        return _duffing_setup(2)
    if name == "duffing_chaotic":
        if not arg:
            raise ValidationError("duffing_chaotic needs an amplitude, e.g. duffing_chaotic:0.5")
        return _duffing_setup(0, amplitude=float(arg))
    if name == "kdv":
        return _kdv_setup(int(arg) if arg else 64)
    if name == "harmonic":
        return _harmonic_setup()
    if name == "quartic":
        return _quartic_setup()
    raise ValidationError(f"unknown problem id {problem_id!r}")


def load_tableau(path):
    """Read a Butcher tableau from a JSON file with keys a, b, order."""
    import json
    try:
        with open(path) as fh:
            data = json.load(fh)
        return ButcherTableau(a=np.array(data["a"], dtype=float),
                              b=np.array(data["b"], dtype=float),
                              order=int(data.get("order", 1)))
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot load tableau from {path}: {exc}")


def _make_stepper(integrator):
    """Map an integrator id onto a stepper(system, u, dt) callable."""
    if integrator == "euler":
        return explicit_euler_step
    if integrator == "ieuler":
        return implicit_euler_step
    if integrator == "sympeuler_a":
        return lambda s, u, dt: symplectic_euler_step(s, u, dt, variant="A")
    if integrator == "sympeuler_b":
        return lambda s, u, dt: symplectic_euler_step(s, u, dt, variant="B")
    if integrator == "verlet":
        return stormer_verlet_step
    if integrator == "rk4":
        return rk4_step
    if integrator == "rk4sym":
        from .steppers import rk4sym_tableau
        tab = rk4sym_tableau()
        return lambda s, u, dt: irk_step(s, u, dt, tab)
    if integrator.startswith("irk:"):
        tab = load_tableau(integrator[4:])
        return lambda s, u, dt: irk_step(s, u, dt, tab)
    raise ValidationError(f"unknown integrator id {integrator!r}")


@dataclass
class RunRecord:
    """Rows plus column names of a completed (or failed) run."""

    problem: str
    integrator: str
    columns: list
    rows: np.ndarray
    failed: bool = False
    failure_message: str = ""

    @property
    def summary(self):
        """mean step / max error / mean error / total cpu, from the rows."""
        t = self.rows[:, 0]
        steps = self.rows[:, -2]
        cpu = self.rows[:, -1]
        n_state = len(self.columns) - 3 - self._n_inv
        out = {
            "mean_step": float(np.mean(steps[1:])) if len(steps) > 1 else 0.0,
            "total_cpu_ns": float(cpu[-1]) if len(cpu) else 0.0,
        }
        if self._n_inv and len(t) > 1:
            err = np.abs(self.rows[:, 1 + n_state])
            out["max_err"] = float(np.max(err))
            out["mean_err"] = float(np.trapezoid(err, t) / (t[-1] - t[0]))
        else:
            out["max_err"] = 0.0
            out["mean_err"] = 0.0
        return out

    @property
    def _n_inv(self):
        return sum(1 for c in self.columns
                   if c not in ("t", "step", "cpu_ns", "u", "du")
                   and not c.startswith(("u_", "re_", "im_")))

    def column(self, name):
        return self.rows[:, self.columns.index(name)]


def _column_names(setup, dim):
    if setup.state_names is not None:
        state_cols = list(setup.state_names)
    else:
        state_cols = [f"u_{i}" for i in range(dim)]
    return ["t"] + state_cols + list(setup.invariant_names) + ["step", "cpu_ns"]


def _state_row(setup, state):
    if setup.kind == "constrained":
        return np.concatenate([state.q, state.p])
    state = np.asarray(state)
    if setup.complex_state:
        return np.column_stack([state.real, state.imag]).ravel()
    return np.real(state)


def run_scenario(scenario):
    """Execute one scenario and return its RunRecord.

    Integrator failures mid-run are captured: the rows recorded so far are
    returned with the failure flag set, so partial data is never lost.
    """
    setup = make_problem(scenario.problem)
    if setup.kind == "constrained":
        if scenario.integrator not in CONSTRAINED_INTEGRATORS:
            raise ValidationError(
                f"{scenario.problem} needs one of {CONSTRAINED_INTEGRATORS}")
        return _run_constrained(scenario, setup)
    if scenario.integrator in CONSTRAINED_INTEGRATORS:
        raise ValidationError(f"{scenario.integrator} needs a constrained problem")
    if scenario.integrator == "bpl":
        if setup.generator is None:
            raise ValidationError(f"{scenario.problem} has no Taylor recurrence for bpl")
        return _run_bpl(scenario, setup)
    if scenario.integrator == "rk4a":
        return _run_rk4_adaptive(scenario, setup)
    if setup.kind == "ode" and scenario.integrator != "rk4":
        raise ValidationError(
            f"{scenario.problem} is a generic ODE; use rk4, rk4a or bpl")
    return _run_fixed_step(scenario, setup)


def _invariant_values(setup, state, t):
    if setup.invariants is None:
        return ()
    return setup.invariants(state, t, setup.ref)


def _record_loop(scenario, setup, state0, advance, n_steps, dt):
    """Shared fixed-step recording loop; advance(state, t) -> state."""
    columns = _column_names(setup, len(_state_row(setup, state0)))
    rows = []
    start = time.perf_counter_ns()

    def emit(state, t, step):
        rows.append(np.concatenate([
            [t], _state_row(setup, state),
            _invariant_values(setup, state, t),
            [step, time.perf_counter_ns() - start]]))

    state, t = state0, 0.0
    emit(state, t, 0.0)
    failed, message = False, ""
    try:
        for k in range(1, n_steps + 1):
            state = advance(state, t)
            t = k * dt
            if k % scenario.stride == 0 or k == n_steps:
                emit(state, t, dt)
    except Exception as exc:  # partial record flushed with failure marker
        failed, message = True, f"{type(exc).__name__}: {exc}"
    return RunRecord(problem=scenario.problem, integrator=scenario.integrator,
                     columns=columns, rows=np.array(rows),
                     failed=failed, failure_message=message)


def _run_fixed_step(scenario, setup):
    n_steps = max(1, int(round(scenario.t_final / scenario.dt)))
    dt = scenario.t_final / n_steps
    if setup.kind == "ode":
        def advance(u, t):
            return rk4_ode_step(setup.rhs, u, t, dt)
    else:
        stepper = _make_stepper(scenario.integrator)

        def advance(u, t):
            out = stepper(setup.system, u, dt)
            return getattr(out, "state", out)
    return _record_loop(scenario, setup, setup.initial, advance, n_steps, dt)


def _run_constrained(scenario, setup):
    steps = {"dirac1": dirac1_step, "dirac2": dirac2_step,
             "euler_constrained": euler_constrained_control}
    step = steps[scenario.integrator]
    n_steps = max(1, int(round(scenario.t_final / scenario.dt)))
    dt = scenario.t_final / n_steps
    sys_c = setup.constrained

    def advance(st, t):
        if scenario.integrator == "dirac2" and st.q_prev is None:
            return dirac1_step(sys_c, st, dt)
        return step(sys_c, st, dt)

    return _record_loop(scenario, setup, setup.initial_dirac, advance, n_steps, dt)


def _adaptive_record(scenario, setup, runner):
    """Adaptive loop: runner yields (t, state, step) tuples."""
    columns = _column_names(setup, len(_state_row(setup, setup.initial)))
    rows = []
    start = time.perf_counter_ns()

    def emit(state, t, step):
        rows.append(np.concatenate([
            [t], _state_row(setup, state),
            _invariant_values(setup, state, t),
            [step, time.perf_counter_ns() - start]]))

    emit(setup.initial, 0.0, 0.0)
    failed, message = False, ""
    try:
        for k, (t, state, step) in enumerate(runner(), start=1):
            if k % scenario.stride == 0 or t >= scenario.t_final - 1e-12:
                emit(state, t, step)
    except Exception as exc:
        failed, message = True, f"{type(exc).__name__}: {exc}"
    return RunRecord(problem=scenario.problem, integrator=scenario.integrator,
                     columns=columns, rows=np.array(rows),
                     failed=failed, failure_message=message)


def _run_bpl(scenario, setup):
    cfg = BplConfig(eps_res=scenario.eps_res, order=scenario.order,
                    n_num=scenario.pade_num, n_den=scenario.pade_den,
                    quad_nodes=scenario.quad_nodes)
    rule = gauss_laguerre(cfg.quad_nodes)

    def runner():
        t, u = 0.0, np.asarray(setup.initial, dtype=complex)
        prev = None
        while t < scenario.t_final - 1e-12 * max(1.0, scenario.t_final):
            t, u, diag = bpl_step(setup.generator, u, t, cfg, prev_step=prev,
                                  h_cap=scenario.t_final - t, rule=rule)
            prev = diag["step"]
            yield t, u, diag["step"]

    return _adaptive_record(scenario, setup, runner)


def _run_rk4_adaptive(scenario, setup):
    rhs = setup.rhs

    def runner():
        t = 0.0
        u = np.asarray(setup.initial,
                       dtype=complex if np.iscomplexobj(setup.initial) else float)
        dt = min(1e-3, scenario.t_final)
        while t < scenario.t_final - 1e-14:
            dt = min(dt, scenario.t_final - t)
            big = rk4_ode_step(rhs, u, t, dt)
            half = rk4_ode_step(rhs, u, t, dt / 2.0)
            two = rk4_ode_step(rhs, half, t + dt / 2.0, dt / 2.0)
            err = float(np.max(np.abs(two - big))) / 15.0
            limit = scenario.eps_res * max(1.0, float(np.max(np.abs(u))))
            if err <= limit:
                u, t = two, t + dt
                yield t, u, dt
            factor = 0.9 * (limit / err) ** 0.2 if err > 0 else 4.0
            dt *= min(4.0, max(0.1, factor))

    return _adaptive_record(scenario, setup, runner)


# ---------------------------------------------------------------------------
# CSV and plot-script emission


def write_csv(record, path):
    """Rows with 17 significant digits, so re-reading is lossless."""
    try:
        with open(path, "w") as fh:
            fh.write(",".join(record.columns) + "\n")
            for row in record.rows:
                fh.write(",".join(f"{x:.17g}" for x in row) + "\n")
            if record.failed:
                fh.write(f"# FAILED: {record.failure_message}\n")
    except OSError as exc:
        raise IoFailureError(f"cannot write {path}: {exc}")


def read_csv(path, problem="", integrator=""):
    try:
        with open(path) as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except OSError as exc:
        raise IoFailureError(f"cannot read {path}: {exc}")
    failed = any(ln.startswith("# FAILED") for ln in lines)
    message = next((ln[2:] for ln in lines if ln.startswith("# FAILED")), "")
    data = [ln for ln in lines if not ln.startswith("#")]
    columns = data[0].split(",")
    rows = np.array([[float(x) for x in ln.split(",")] for ln in data[1:]])
    return RunRecord(problem=problem, integrator=integrator, columns=columns,
                     rows=rows, failed=failed, failure_message=message)


def compare(records):
    """Aligned comparison of >= 2 records on the same problem.

    Returns (table_text, ratios) where ratios are measured against the first
    record: mean step, mean error, and CPU.
    """
    if len(records) < 2:
        raise MismatchedProblemError("compare needs at least two records")
    base = records[0]
    if any(r.problem != base.problem for r in records):
        raise MismatchedProblemError(
            f"records mix problems: {sorted({r.problem for r in records})}")
    lines = [f"problem: {base.problem}",
             f"{'integrator':<18}{'mean_step':>14}{'mean_err':>14}"
             f"{'max_err':>14}{'cpu_s':>10}{'step_ratio':>12}{'err_ratio':>12}"]
    s0 = base.summary
    ratios = []
    for rec in records:
        s = rec.summary
        step_ratio = s["mean_step"] / s0["mean_step"] if s0["mean_step"] else np.nan
        err_ratio = s["mean_err"] / s0["mean_err"] if s0["mean_err"] else np.nan
        ratios.append({"step": step_ratio, "err": err_ratio,
                       "cpu": s["total_cpu_ns"] / max(s0["total_cpu_ns"], 1.0)})
        lines.append(f"{rec.integrator:<18}{s['mean_step']:>14.5g}"
                     f"{s['mean_err']:>14.5g}{s['max_err']:>14.5g}"
                     f"{s['total_cpu_ns'] * 1e-9:>10.3f}"
                     f"{step_ratio:>12.4g}{err_ratio:>12.4g}")
    return "\n".join(lines), ratios


_PLOT_TEMPLATE = """\
# Plot script for {csv}; run with: python3 {name}
import csv

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

with open({csv!r}) as fh:
    reader = csv.reader(row for row in fh if not row.startswith("#"))
    header = next(reader)
    cols = {{name: [] for name in header}}
    for row in reader:
        for name, value in zip(header, row):
            cols[name].append(float(value))

plt.figure(figsize=(7, 4))
{body}
plt.tight_layout()
plt.savefig({png!r}, dpi=150)
print("wrote", {png!r})
"""


def emit_plot_scripts(record, out_base):
    """Write <out_base>.csv and <out_base>_plot.py.

    The script is plain text and refers to CSV columns by name: an error-vs-t
    semilog plot when the record carries an invariant column, a phase
    portrait for the chaotic Duffing runs.
    """
    if record.rows.size == 0:
        raise IoFailureError("record has no rows to plot")
    csv_path = f"{out_base}.csv"
    script_path = f"{out_base}_plot.py"
    write_csv(record, csv_path)
    inv = [c for c in record.columns
           if c not in ("t", "step", "cpu_ns") and not c.startswith(("u_", "re_", "im_"))
           and c not in ("u", "du")]
    if inv:
        body = (f'plt.semilogy(cols["t"], [abs(v) + 1e-300 for v in cols["{inv[0]}"]])\n'
                f'plt.xlabel("t")\nplt.ylabel("{inv[0]}")\n'
                f'plt.title("{record.problem} / {record.integrator}")')
    else:
        body = ('start = next(i for i, t in enumerate(cols["t"]) if t >= 40.0)\n'
                'plt.plot(cols["u"][start:], cols["du"][start:], lw=0.3)\n'
                'plt.xlabel("u")\nplt.ylabel("du/dt")\n'
                f'plt.title("{record.problem} phase portrait")')
    text = _PLOT_TEMPLATE.format(csv=csv_path, name=script_path, body=body,
                                 png=f"{out_base}.png")
    try:
        with open(script_path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoFailureError(f"cannot write {script_path}: {exc}")
    return [csv_path, script_path]


# ---------------------------------------------------------------------------
# Config files: flat key=value, '#' comments, CLI overrides applied on top.

_CONFIG_KEYS = {
    "problem": str, "integrator": str, "dt": float, "eps_res": float,
    "t_final": float, "order": int, "pade_num": int, "pade_den": int,
    "quad_nodes": int, "stride": int, "out": str,
}


def parse_config(path, overrides=None):
    values = {}
    try:
        with open(path) as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValidationError(f"{path}:{lineno}: expected key=value")
                key, _, raw = line.partition("=")
                key, raw = key.strip(), raw.strip()
                if key not in _CONFIG_KEYS:
                    raise ValidationError(f"{path}:{lineno}: unknown key {key!r}")
                try:
                    values[key] = _CONFIG_KEYS[key](raw)
                except ValueError:
                    raise ValidationError(f"{path}:{lineno}: bad value for {key}")
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}")
    for key, value in (overrides or {}).items():
        if value is not None:
            if key not in _CONFIG_KEYS:
                raise ValidationError(f"unknown override key {key!r}")
            values[key] = _CONFIG_KEYS[key](value)
    out = values.pop("out", None)
    missing = {"problem", "integrator", "t_final"} - set(values)
    if missing:
        raise ValidationError(f"config is missing keys: {sorted(missing)}")
    return Scenario(out=out, **values)
