#!/usr/bin/env python3
"""LP-file MILP driver backed by scipy's HiGHS interface.

One-shot:  solve_backend.py MODEL.lp OUT.sol [--gap G] [--time-limit T]
Server:    solve_backend.py --serve
           requests on stdin, one per line:
               SOLVE <model.lp> <out.sol> <gap> <time-limit>
           reply per request: "OK" or "ERR <message>"; "QUIT" or EOF ends.

Solution file format: one `name value` pair per line. Reserved names come
first (status, objective, gap, nodes, walltime), then every variable.
status is one of optimal, gap-feasible, infeasible, unbounded, time-limit.
A time-limit stop with an incumbent still lists variable values; without an
incumbent no variable lines are written and objective is nan.

The parser accepts the common LP-format subset: Minimize/Maximize, named or
unnamed constraints, Bounds statements (lb <= x <= ub, x free, x = v, ...),
Binaries/Generals sections, backslash comments, and +/-infinity tokens.
"""

import re
import sys
import time

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp

TOKEN = re.compile(
    r"<=|>=|=<|=>|[<>=:+\-]|"
    r"[0-9]+(?:\.[0-9]*)?(?:[eE][+-]?[0-9]+)?|\.[0-9]+(?:[eE][+-]?[0-9]+)?|"
    r"[A-Za-z_][A-Za-z0-9_.]*"
)
SECTIONS = {
    "minimize": "obj-min", "minimise": "obj-min", "min": "obj-min",
    "maximize": "obj-max", "maximise": "obj-max", "max": "obj-max",
    "subject": "st", "such": "st", "st": "st", "s.t.": "st",
    "bounds": "bounds", "bound": "bounds",
    "binaries": "bin", "binary": "bin", "bin": "bin",
    "generals": "gen", "general": "gen", "gen": "gen", "integers": "gen",
    "end": "end",
}
NUM_START = set("0123456789.")


class Model:
    def __init__(self):
        self.names = []
        self.ids = {}
        self.lb = []
        self.ub = []
        self.integrality = []
        self.bounded = []  # explicit Bounds statement seen
        self.obj = {}
        self.obj_const = 0.0
        self.maximize = False
        self.rows = []  # (coef dict, sense, rhs)

    def var(self, name):
        vid = self.ids.get(name)
        if vid is None:
            vid = len(self.names)
            self.ids[name] = vid
            self.names.append(name)
            self.lb.append(0.0)
            self.ub.append(np.inf)
            self.integrality.append(0)
            self.bounded.append(False)
        return vid


def tokenize(text):
    # strip backslash comments line by line, then scan
    lines = [ln.split("\\", 1)[0] for ln in text.splitlines()]
    return TOKEN.findall("\n".join(lines))


def is_number(tok):
    return tok[0] in NUM_START


def is_inf(tok):
    return tok.lower() in ("inf", "infinity", "+inf", "+infinity")


class Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.pos = 0

    def peek(self, ahead=0):
        i = self.pos + ahead
        return self.toks[i] if i < len(self.toks) else None

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def section_of(self, tok):
        if tok is None:
            return "end"
        kind = SECTIONS.get(tok.lower())
        if kind == "st":
            # consume the second keyword of "subject to" / "such that"
            nxt = self.peek()
            if nxt is not None and nxt.lower() in ("to", "that"):
                self.pos += 1
        return kind

    def signed_value(self):
        sign = 1.0
        while self.peek() in ("+", "-"):
            if self.next() == "-":
                sign = -sign
        tok = self.next()
        if tok is None:
            raise ValueError("unexpected end of file in number")
        if is_inf(tok):
            return sign * np.inf
        return sign * float(tok)

    # expression: signed terms until a sense token or section keyword;
    # returns (coef dict, constant)
    def expression(self, model):
        coefs = {}
        const = 0.0
        sign = 1.0
        pending = None  # number waiting to know if it multiplies a var
        while True:
            tok = self.peek()
            if tok is None or tok in ("<=", ">=", "=<", "=>", "<", ">", "="):
                break
            if tok.lower() in SECTIONS and self.peek(1) != ":":
                break
            self.pos += 1
            if tok in ("+", "-"):
                if pending is not None:  # previous number was a bare constant
                    const += sign * pending
                    pending = None
                    sign = 1.0
                if tok == "-":
                    sign = -sign
                continue
            if is_number(tok) or is_inf(tok):
                if pending is not None:
                    const += sign * pending
                    sign = 1.0
                pending = np.inf if is_inf(tok) else float(tok)
                continue
            # a name: either "name :" label or a variable
            if self.peek() == ":":
                self.pos += 1  # drop label, restart term state
                sign, pending = 1.0, None
                continue
            vid = model.var(tok)
            coefs[vid] = coefs.get(vid, 0.0) + sign * (1.0 if pending is None else pending)
            sign, pending = 1.0, None
        if pending is not None:
            const += sign * pending
        return coefs, const

    def sense(self):
        tok = self.next()
        if tok in ("<=", "=<", "<"):
            return "<="
        if tok in (">=", "=>", ">"):
            return ">="
        if tok == "=":
            return "="
        raise ValueError(f"expected constraint sense, got {tok!r}")


def parse_lp(text):
    p = Parser(tokenize(text))
    model = Model()
    section = p.section_of(p.next())
    if section is None:
        raise ValueError("LP file must start with an objective section")
    while section and section != "end":
        if section in ("obj-min", "obj-max"):
            model.maximize = section == "obj-max"
            coefs, const = p.expression(model)
            model.obj = coefs
            model.obj_const = const
            section = p.section_of(p.next())
        elif section == "st":
            while True:
                tok = p.peek()
                if tok is None or (tok.lower() in SECTIONS and p.peek(1) != ":"):
                    break
                coefs, const = p.expression(model)
                s = p.sense()
                rhs = p.signed_value() - const
                model.rows.append((coefs, s, rhs))
            section = p.section_of(p.next())
        elif section == "bounds":
            while True:
                tok = p.peek()
                if tok is None or (tok.lower() in SECTIONS and p.peek(1) != ":"):
                    break
                if is_number(tok) or tok in ("+", "-") or is_inf(tok):
                    lo = p.signed_value()
                    s = p.sense()
                    if s != "<=":
                        raise ValueError("malformed bound")
                    name = p.next()
                    vid = model.var(name)
                    model.lb[vid] = lo
                    model.bounded[vid] = True
                    if p.peek() in ("<=", "=<", "<"):
                        p.next()
                        model.ub[vid] = p.signed_value()
                else:
                    name = p.next()
                    follow = p.peek()
                    if follow is not None and follow.lower() == "free":
                        p.next()
                        vid = model.var(name)
                        model.lb[vid], model.ub[vid] = -np.inf, np.inf
                        model.bounded[vid] = True
                    else:
                        s = p.sense()
                        val = p.signed_value()
                        vid = model.var(name)
                        model.bounded[vid] = True
                        if s == "<=":
                            model.ub[vid] = val
                        elif s == ">=":
                            model.lb[vid] = val
                        else:
                            model.lb[vid] = model.ub[vid] = val
            section = p.section_of(p.next())
        elif section in ("bin", "gen"):
            binary = section == "bin"
            while True:
                tok = p.peek()
                if tok is None or (tok.lower() in SECTIONS and p.peek(1) != ":"):
                    break
                vid = model.var(p.next())
                model.integrality[vid] = 1
                if binary and not model.bounded[vid]:
                    model.lb[vid], model.ub[vid] = 0.0, 1.0
            section = p.section_of(p.next())
        else:
            raise ValueError(f"unhandled section {section!r}")
    return model


def solve_model(model, gap, time_limit):
    n = len(model.names)
    if n == 0:
        raise ValueError("model has no variables")
    c = np.zeros(n)
    for vid, coef in model.obj.items():
        c[vid] = coef
    if model.maximize:
        c = -c
    constraints = None
    if model.rows:
        data, indices, indptr, bl, bu = [], [], [0], [], []
        for coefs, s, rhs in model.rows:
            for vid, coef in coefs.items():
                indices.append(vid)
                data.append(coef)
            indptr.append(len(indices))
            bl.append(rhs if s in (">=", "=") else -np.inf)
            bu.append(rhs if s in ("<=", "=") else np.inf)
        A = sparse.csr_matrix(
            (np.asarray(data), np.asarray(indices), np.asarray(indptr)),
            shape=(len(model.rows), n),
        )
        constraints = LinearConstraint(A, np.asarray(bl), np.asarray(bu))
    options = {"mip_rel_gap": gap}
    if time_limit and time_limit > 0:
        options["time_limit"] = time_limit
    t0 = time.perf_counter()
    res = milp(
        c=c,
        constraints=constraints,
        integrality=np.asarray(model.integrality),
        bounds=Bounds(np.asarray(model.lb), np.asarray(model.ub)),
        options=options,
    )
    wall = time.perf_counter() - t0

    status_map = {0: "optimal", 1: "time-limit", 2: "infeasible", 3: "unbounded"}
    status = status_map.get(res.status)
    if status is None:
        raise ValueError(f"solver failed: {res.message}")
    mip_gap = getattr(res, "mip_gap", None)
    if mip_gap is None or not np.isfinite(mip_gap):
        mip_gap = 0.0 if status == "optimal" else np.inf
    if status == "optimal" and mip_gap > gap + 1e-12:
        status = "gap-feasible"
    nodes = getattr(res, "mip_node_count", None) or 0
    objective = np.nan
    values = None
    if res.x is not None:
        values = res.x
        objective = float(c @ values) * (-1.0 if model.maximize else 1.0)
        objective += model.obj_const
    return status, objective, mip_gap, nodes, wall, values


def run_one(lp_path, sol_path, gap, time_limit):
    with open(lp_path) as f:
        text = f.read()
    model = parse_lp(text)
    status, objective, mip_gap, nodes, wall, values = solve_model(model, gap, time_limit)
    with open(sol_path, "w") as f:
        f.write(f"status {status}\n")
        f.write(f"objective {objective:.17g}\n")
        f.write(f"gap {mip_gap:.17g}\n")
        f.write(f"nodes {nodes}\n")
        f.write(f"walltime {wall:.6f}\n")
        if values is not None:
            for name, val in zip(model.names, values):
                f.write(f"{name} {val:.17g}\n")


def serve():
    for line in sys.stdin:
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "QUIT":
            print("OK", flush=True)
            return 0
        if parts[0] != "SOLVE" or len(parts) != 5:
            print("ERR malformed request", flush=True)
            continue
        try:
            run_one(parts[1], parts[2], float(parts[3]), float(parts[4]))
            print("OK", flush=True)
        except Exception as exc:  # report, keep serving
            msg = str(exc).replace("\n", " ")[:500]
            print(f"ERR {msg}", flush=True)
    return 0


def main(argv):
    if "--serve" in argv:
        return serve()
    pos = [a for a in argv if not a.startswith("--")]
    if len(pos) < 2:
        print(__doc__, file=sys.stderr)
        return 2
    gap = 0.0
    time_limit = 0.0
    for i, a in enumerate(argv):
        if a == "--gap" and i + 1 < len(argv):
            gap = float(argv[i + 1])
        if a == "--time-limit" and i + 1 < len(argv):
            time_limit = float(argv[i + 1])
    try:
        run_one(pos[0], pos[1], gap, time_limit)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
