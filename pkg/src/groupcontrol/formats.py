"""Line-based text formats: profiles, control instances and source instances.

All formats start with a ``<tag> v1`` header line. Indices are 0-based.
``serialize_*`` output is canonical, so ``parse(serialize(x)) == x`` and
``serialize(parse(text)) == text`` for canonical ``text``. See
``docs/formats.md`` for the grammar.
"""

from .errors import InputError, ParseError
from .instances import GcaiInstance, GcdiInstance, GcpiInstance, Problem
from .reductions import LrbdsInstance, RbdsInstance, Rx3cInstance, ThreeSatInstance
from .rules import Profile, RuleSpec, members

PROFILE_TAG = "gi-profile v1"
INSTANCE_TAG = "gi-instance v1"
RX3C_TAG = "rx3c v1"
CNF3_TAG = "cnf3 v1"
RBDS_TAG = "rbds v1"
LRBDS_TAG = "lrbds v1"


class _Reader:
    def __init__(self, text, first_line=1):
        self.lines = text.splitlines()
        self.pos = 0
        self.offset = first_line - 1

    @property
    def lineno(self):
        return self.pos + self.offset + 1

    def error(self, msg, column=None, line=None):
        return ParseError(msg, line if line is not None else self.lineno, column)

    def at_end(self):
        return self.pos >= len(self.lines)

    def next(self, what):
        if self.at_end():
            raise ParseError(f"unexpected end of input, expected {what}", self.lineno)
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def peek(self):
        return None if self.at_end() else self.lines[self.pos]

    def header(self, tag):
        line = self.next(f"'{tag}' header")
        if line.strip() != tag:
            raise ParseError(f"expected header '{tag}', got {line.strip()!r}", self.lineno - 1, 1)

    def keyed(self, key, sep=" "):
        """Read ``key<sep>value`` and return the value text."""
        line = self.next(f"'{key}' line")
        prefix = key + sep
        if not line.startswith(prefix):
            raise ParseError(f"expected '{prefix.strip()}' line", self.lineno - 1, 1)
        return line[len(prefix):].strip()

    def integer(self, text, column, what, minimum=0):
        line = self.lineno - 1
        try:
            value = int(text)
        except ValueError:
            raise ParseError(f"{what} must be an integer, got {text!r}", line, column) from None
        if value < minimum:
            raise ParseError(f"{what} must be >= {minimum}, got {value}", line, column)
        return value

    def int_list(self, text, column, what):
        values = []
        col = column
        for tok in text.split(" "):
            if tok:
                values.append(self.integer(tok, col, what))
            col += len(tok) + 1
        return values

    def expect_end(self):
        while not self.at_end():
            line = self.next("nothing")
            if line.strip():
                raise ParseError("unexpected trailing content", self.lineno - 1, 1)


def _indices(m):
    return " ".join(str(i) for i in members(m))


# -- profiles -----------------------------------------------------------------


def serialize_profile(p: Profile) -> str:
    lines = [PROFILE_TAG, f"n {p.n}"]
    for i, r in enumerate(p.rows):
        row = "".join(str((r >> j) & 1) for j in range(p.n))
        name = p.names[i]
        lines.append(f"{row} # {name}" if name is not None else row)
    return "\n".join(lines) + "\n"


def _read_profile(rd: _Reader) -> Profile:
    rd.header(PROFILE_TAG)
    n = rd.integer(rd.keyed("n"), 3, "n", minimum=1)
    rows, names = [], []
    for i in range(n):
        line = rd.next(f"row {i}")
        body, _, comment = line.partition("#")
        body = body.rstrip()
        if len(body) != n:
            raise rd.error(f"row {i} has {len(body)} entries, expected {n}", 1, rd.lineno - 1)
        r = 0
        for j, ch in enumerate(body):
            if ch not in "01":
                raise rd.error(f"entry must be 0 or 1, got {ch!r}", j + 1, rd.lineno - 1)
            if ch == "1":
                r |= 1 << j
        rows.append(r)
        name = comment.strip() if _ else None
        names.append(name or None)
    return Profile(tuple(rows), tuple(names))


def parse_profile(text: str) -> Profile:
    rd = _Reader(text)
    p = _read_profile(rd)
    rd.expect_end()
    return p


# -- rules and instances ------------------------------------------------------


def format_rule(rule: RuleSpec) -> str:
    return str(rule)


def parse_rule(text: str) -> RuleSpec:
    parts = text.split()
    if not parts:
        raise InputError("empty rule")
    kind = parts[0].lower()
    if kind == "consent":
        if len(parts) != 3:
            raise InputError("consent rule needs two quotas: 'consent <s> <t>'")
        try:
            s, t = int(parts[1]), int(parts[2])
        except ValueError:
            raise InputError(f"consent quotas must be integers: {text!r}") from None
        return RuleSpec.consent(s, t)
    if kind in ("csr", "lsr") and len(parts) == 1:
        return RuleSpec(kind)
    raise InputError(f"unknown rule {text!r}; expected 'consent <s> <t>', 'csr' or 'lsr'")


def serialize_instance(inst) -> str:
    lines = [INSTANCE_TAG, f"problem: {inst.problem}", f"rule: {format_rule(inst.rule)}"]
    lines.append(f"S: {_indices(inst.S)}")
    if isinstance(inst, GcaiInstance):
        lines.append(f"T: {_indices(inst.T)}")
    if isinstance(inst, (GcaiInstance, GcdiInstance)):
        lines.append(f"k: {inst.k}")
    return "\n".join(lines) + "\n" + serialize_profile(inst.profile)


def parse_instance(text: str):
    rd = _Reader(text)
    rd.header(INSTANCE_TAG)
    raw = rd.keyed("problem:")
    try:
        problem = Problem(raw.upper())
    except ValueError:
        raise rd.error(f"unknown problem {raw!r}", 10, rd.lineno - 1) from None
    raw_rule = rd.keyed("rule:")
    try:
        rule = parse_rule(raw_rule)
    except InputError as exc:
        raise rd.error(str(exc), 7, rd.lineno - 1) from None
    S = rd.int_list(rd.keyed("S:"), 4, "index")
    T = k = None
    nxt = rd.peek()
    if nxt is not None and nxt.startswith("T:"):
        T = rd.int_list(rd.keyed("T:"), 4, "index")
    nxt = rd.peek()
    if nxt is not None and nxt.startswith("k:"):
        k = rd.integer(rd.keyed("k:"), 4, "k")
    field_line = rd.lineno
    profile = _read_profile(rd)
    rd.expect_end()
    try:
        if problem == Problem.GCAI:
            if T is None or k is None:
                raise InputError("GCAI instances need 'T:' and 'k:' lines")
            return GcaiInstance(profile, rule, S, T, k)
        if T is not None:
            raise InputError(f"{problem} instances take no 'T:' line")
        if problem == Problem.GCDI:
            if k is None:
                raise InputError("GCDI instances need a 'k:' line")
            return GcdiInstance(profile, rule, S, k)
        if k is not None:
            raise InputError("GCPI instances take no 'k:' line")
        return GcpiInstance(profile, rule, S)
    except ParseError:
        raise
    except InputError as exc:
        raise ParseError(str(exc), field_line) from None


# -- source instances ---------------------------------------------------------


def serialize_rx3c(src: Rx3cInstance) -> str:
    lines = [RX3C_TAG, f"kappa {src.kappa}", f"sets {len(src.sets)}"]
    lines.extend(" ".join(str(x) for x in c) for c in src.sets)
    return "\n".join(lines) + "\n"


def parse_rx3c(text: str) -> Rx3cInstance:
    rd = _Reader(text)
    rd.header(RX3C_TAG)
    kappa = rd.integer(rd.keyed("kappa"), 7, "kappa", minimum=1)
    count = rd.integer(rd.keyed("sets"), 6, "sets")
    sets = [rd.int_list(rd.next(f"set {j}"), 1, "element") for j in range(count)]
    rd.expect_end()
    try:
        return Rx3cInstance(kappa, tuple(tuple(c) for c in sets))
    except InputError as exc:
        raise ParseError(str(exc)) from None


def _literal(v, positive):
    return str(v) if positive else f"~{v}"


def serialize_cnf3(src: ThreeSatInstance) -> str:
    lines = [CNF3_TAG, f"vars {src.num_vars}", f"clauses {len(src.clauses)}"]
    lines.extend(" ".join(_literal(v, pos) for v, pos in c) for c in src.clauses)
    return "\n".join(lines) + "\n"


def parse_cnf3(text: str) -> ThreeSatInstance:
    rd = _Reader(text)
    rd.header(CNF3_TAG)
    num_vars = rd.integer(rd.keyed("vars"), 6, "vars")
    count = rd.integer(rd.keyed("clauses"), 9, "clauses")
    clauses = []
    for j in range(count):
        line = rd.next(f"clause {j}")
        lits, col = [], 1
        for tok in line.split(" "):
            if tok:
                positive = not tok.startswith("~")
                v = rd.integer(tok if positive else tok[1:], col, "variable")
                lits.append((v, positive))
            col += len(tok) + 1
        clauses.append(tuple(lits))
    rd.expect_end()
    try:
        return ThreeSatInstance(num_vars, tuple(clauses))
    except InputError as exc:
        raise ParseError(str(exc)) from None


def _edge_lines(edges):
    return [f"{r} {b}" for r, b in sorted(edges)]


def _read_edges(rd):
    count = rd.integer(rd.keyed("edges"), 7, "edges")
    edges = []
    for j in range(count):
        vals = rd.int_list(rd.next(f"edge {j}"), 1, "vertex")
        if len(vals) != 2:
            raise rd.error("edge line needs two vertex indices", 1, rd.lineno - 1)
        edges.append(tuple(vals))
    return edges


def serialize_rbds(src: RbdsInstance) -> str:
    lines = [RBDS_TAG, f"red {src.n_red}", f"blue {src.n_blue}", f"k {src.k}", f"edges {len(src.edges)}"]
    lines.extend(_edge_lines(src.edges))
    return "\n".join(lines) + "\n"


def parse_rbds(text: str) -> RbdsInstance:
    rd = _Reader(text)
    rd.header(RBDS_TAG)
    n_red = rd.integer(rd.keyed("red"), 5, "red")
    n_blue = rd.integer(rd.keyed("blue"), 6, "blue")
    k = rd.integer(rd.keyed("k"), 3, "k")
    edges = _read_edges(rd)
    rd.expect_end()
    try:
        return RbdsInstance(n_red, n_blue, frozenset(edges), k)
    except InputError as exc:
        raise ParseError(str(exc)) from None


def serialize_lrbds(src: LrbdsInstance) -> str:
    lines = [
        LRBDS_TAG,
        f"red {src.n_red}",
        f"blue {src.n_blue}",
        f"k {src.k}",
        "labels " + " ".join(str(x) for x in src.labels),
        f"edges {len(src.edges)}",
    ]
    lines.extend(_edge_lines(src.edges))
    return "\n".join(lines).replace("labels \n", "labels\n") + "\n"


def parse_lrbds(text: str) -> LrbdsInstance:
    rd = _Reader(text)
    rd.header(LRBDS_TAG)
    n_red = rd.integer(rd.keyed("red"), 5, "red")
    n_blue = rd.integer(rd.keyed("blue"), 6, "blue")
    k = rd.integer(rd.keyed("k"), 3, "k")
    line = rd.next("'labels' line")
    if line.rstrip() != "labels" and not line.startswith("labels "):
        raise rd.error("expected 'labels' line", 1, rd.lineno - 1)
    labels = rd.int_list(line[len("labels"):].strip(), 8, "label")
    if len(labels) != n_red:
        raise rd.error(f"{len(labels)} labels for {n_red} red vertices", 1, rd.lineno - 1)
    edges = _read_edges(rd)
    rd.expect_end()
    try:
        return LrbdsInstance(tuple(labels), n_blue, frozenset(edges), k)
    except InputError as exc:
        raise ParseError(str(exc)) from None


SOURCE_PARSERS = {
    RX3C_TAG: parse_rx3c,
    CNF3_TAG: parse_cnf3,
    RBDS_TAG: parse_rbds,
    LRBDS_TAG: parse_lrbds,
}


def parse_source(text: str):
    """Parse any source-instance format, dispatching on the header line."""
    head = text.splitlines()[0].strip() if text.strip() else ""
    if head not in SOURCE_PARSERS:
        raise ParseError(f"unknown source header {head!r}", 1, 1)
    return SOURCE_PARSERS[head](text)


def serialize_source(src) -> str:
    if isinstance(src, Rx3cInstance):
        return serialize_rx3c(src)
    if isinstance(src, ThreeSatInstance):
        return serialize_cnf3(src)
    if isinstance(src, RbdsInstance):
        return serialize_rbds(src)
    if isinstance(src, LrbdsInstance):
        return serialize_lrbds(src)
    raise InputError(f"not a source instance: {type(src).__name__}")
