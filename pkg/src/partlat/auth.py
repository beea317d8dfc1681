"""Challenge-response authentication over direct powers of partition lattices.

The prover and the verifier share a secret vector ``s`` of ``p`` tuples that
contains a generating set.  The verifier sends ``q`` random ``p``-ary terms,
the prover answers with their values at ``s``.  Helpers cover key
derivation for a one-time pad, a commitment variant and a line protocol
over TCP or standard streams.
"""

from __future__ import annotations

import socket
import socketserver
import sys
from dataclasses import dataclass, field

from . import combinatorics as comb
from .errors import InvalidArgument, ParseError, ProtocolError, ShapeError
from .partition import (LatticeShape, PartitionTuple, random_partition,
                        random_permutation_apply, tuple_bottom, tuple_distance,
                        tuple_from_text, tuple_to_text, tuple_top)
from .power import build_delta_hat, certify_theorem1, theorem1_plan
from .rng import XorShift64Star, splitmix64, substream_seed
from .terms import Evaluator, Monitor, absorption_sites, max_variable, parse_term, random_term, serialize_term
from .zadori import build_config

PROTOCOL_VERSION = 1
MODES = ("permute-zadori", "permute-theorem1", "explicit")
PRESETS = {"small": "P273^1", "power": "P12^61"}
# enumerate the whole antichain only below this size; otherwise use a prefix
_ANTICHAIN_ENUM_LIMIT = 100_000


@dataclass
class Secret:
    shape: LatticeShape
    s: list
    mode: str = "explicit"
    perms: list | None = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.s) < 4:
            raise InvalidArgument(f"secret needs p >= 4 entries, got {len(self.s)}")
        for x in self.s:
            if x.shape != self.shape:
                raise ShapeError(f"secret entry of shape {x.shape}, expected {self.shape}")

    @property
    def p(self):
        return len(self.s)

    def generating_certificate(self):
        """Certificate that the first four entries generate, or ``None``.

        Needs the base-set permutations, so only works on secrets built here.
        """
        if self.mode == "permute-theorem1" and self.perms is not None:
            inv = [_inverse(perm) for perm in self.perms]
            quad = [_permute_tuple(x, inv) for x in self.s[:4]]
            return certify_theorem1(self.shape.n, quad)
        return None

    def to_text(self):
        lines = [str(self.shape), str(self.p)] + [tuple_to_text(x) for x in self.s]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if len(lines) < 2:
            raise ParseError("secret file needs a shape line and a count line")
        shape = LatticeShape.parse(lines[0])
        try:
            p = int(lines[1])
        except ValueError:
            raise ParseError(f"bad entry count {lines[1]!r}", token=lines[1]) from None
        if len(lines) - 2 != p:
            raise ParseError(f"secret file declares {p} tuples, found {len(lines) - 2}")
        return cls(shape, [tuple_from_text(ln, shape) for ln in lines[2:]])


def read_secret(path):
    with open(path, encoding="utf-8") as fh:
        return Secret.from_text(fh.read())


def write_secret(secret, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(secret.to_text())


def _inverse(perm):
    inv = [0] * len(perm)
    for i, v in enumerate(perm):
        inv[v - 1] = i + 1
    return inv


def _permute_tuple(x, perms):
    return PartitionTuple([random_permutation_apply(c, perm) for c, perm in zip(x.coords, perms)])


def _random_tuple(shape, rng):
    return PartitionTuple([random_partition(shape.n, rng) for _ in range(shape.t)])


def _theorem1_quadruple(shape, rng, shuffle):
    config = build_config(shape.n)
    m = comb.m_of_n(shape.n)
    if shape.t > m:
        raise InvalidArgument(f"{shape} exceeds m({shape.n}) = {m}")
    if shuffle and m <= _ANTICHAIN_ENUM_LIMIT:
        plan = theorem1_plan(config)
        chosen = [plan.pairs[i] for i in rng.sample_indices(m, shape.t)]
    else:
        plan = theorem1_plan(config, shape.t)
        chosen = plan.pairs
    deltas = [build_delta_hat(config, kap, plan.U, lam, plan.W) for kap, lam in chosen]
    t = shape.t
    return [PartitionTuple([config.alpha] * t), PartitionTuple([config.beta] * t),
            PartitionTuple([config.gamma] * t), PartitionTuple(deltas)]


def make_secret(shape, p, seed, mode="permute-zadori", base=None, shuffle_antichain=True,
                identity=False):
    """Random secret of ``p`` tuples whose first four entries generate ``shape``.

    ``permute-zadori`` (``t = 1``) and ``permute-theorem1`` (``t <= m(n)``)
    apply an independent random relabelling of ``{1..n}`` in every
    coordinate to a known generating quadruple; ``explicit`` uses ``base``
    as given.  The remaining ``p - 4`` entries are uniform random tuples.
    """
    shape = LatticeShape.parse(shape) if isinstance(shape, str) else shape
    if p < 4:
        raise InvalidArgument(f"p must be at least 4, got {p}")
    if mode not in MODES:
        raise InvalidArgument(f"unknown secret mode {mode!r}")
    rng = XorShift64Star(seed)
    perms = None
    if mode == "explicit":
        if base is None or len(base) < 4:
            raise InvalidArgument("explicit mode needs at least four base tuples")
        quad = [x if isinstance(x, PartitionTuple) else PartitionTuple([x]) for x in base]
    else:
        if shape.n < 5:
            raise InvalidArgument(f"{mode} needs n >= 5, got {shape}")
        if mode == "permute-zadori":
            if shape.t != 1:
                raise InvalidArgument(f"permute-zadori supports t = 1 only, got {shape}")
            quad = [PartitionTuple([g]) for g in build_config(shape.n).quadruple]
        else:
            quad = _theorem1_quadruple(shape, rng, shuffle_antichain and not identity)
        if identity:
            perms = [list(range(1, shape.n + 1)) for _ in range(shape.t)]
        else:
            perms = [[v + 1 for v in rng.permutation(shape.n)] for _ in range(shape.t)]
        quad = [_permute_tuple(x, perms) for x in quad]
    s = list(quad)
    while len(s) < p:
        s.append(_random_tuple(shape, rng))
    return Secret(shape, s[:max(p, 4)], mode, perms)


# -- challenges and responses ---------------------------------------------------

@dataclass
class Challenge:
    id: str
    terms: list
    steps: int
    seed: int | None = None

    @property
    def q(self):
        return len(self.terms)

    def payload(self):
        return "/".join(serialize_term(t) for t in self.terms)

    def line(self):
        return f"CHALLENGE {self.id} {self.payload()}"


@dataclass
class Response:
    id: str
    values: list

    @property
    def q(self):
        return len(self.values)

    def payload(self):
        return "/".join(tuple_to_text(r) for r in self.values)

    def line(self):
        return f"RESPONSE {self.id} {self.payload()}"


def challenge_id(seed):
    return f"{splitmix64(seed & 0xFFFFFFFFFFFFFFFF):016x}"


def make_challenge(p=8, q=8, steps=1000, seed=0, policy="uniform", secret=None, D=3):
    """``q`` independent random ``p``-ary terms grown by ``steps`` operations each.

    A party holding the secret may pass it to steer the growth: steps that
    would bring a term's value within ``D`` of bottom or top are redrawn.
    """
    if q < 1 or steps < 0:
        raise InvalidArgument("need q >= 1 and steps >= 0")
    monitor = None
    if secret is not None:
        if secret.p != p:
            raise InvalidArgument(f"secret has p={secret.p}, challenge arity is {p}")
        monitor = Monitor(secret.s, D=D)
    terms = []
    for i in range(q):
        t = random_term(p, steps, XorShift64Star(substream_seed(seed, i)), policy, monitor=monitor)
        if monitor is not None:
            monitor.avoid.append(monitor.value(t))
        terms.append(t)
    return Challenge(challenge_id(seed), terms, steps, seed)


def parse_challenge(line, p=None):
    tag, cid, payload = _split(line, "CHALLENGE")
    return Challenge(cid, [parse_term(x, p) for x in payload.split("/")], steps=-1)


def parse_response(line, shape=None):
    tag, rid, payload = _split(line, "RESPONSE")
    return Response(rid, [tuple_from_text(x, shape) for x in payload.split("/")])


def _split(line, expected):
    parts = line.strip().split(" ", 2)
    if len(parts) < 3 or parts[0] != expected:
        raise ProtocolError(f"expected {expected} line, got {line.strip()[:60]!r}")
    return parts


def _terms(w):
    return w.terms if isinstance(w, Challenge) else list(w)


def respond(secret, w):
    terms = _terms(w)
    for t in terms:
        if max_variable(t) > secret.p:
            raise InvalidArgument(f"term uses x{max_variable(t)} but the secret has p={secret.p}")
    ev = Evaluator(secret.s)
    return Response(getattr(w, "id", ""), [ev.eval(t) for t in terms])


def verify_response(secret, w, r):
    values = r.values if isinstance(r, Response) else list(r)
    terms = _terms(w)
    if len(values) != len(terms):
        return False
    if isinstance(r, Response) and isinstance(w, Challenge) and r.id != w.id:
        return False
    expected = respond(secret, terms).values
    return all(a == b for a, b in zip(expected, values))


def mutate_response(r, rng):
    """Copy of ``r`` with one coordinate of one entry replaced by a different partition."""
    values = list(r.values)
    i = rng.below(len(values))
    x = values[i]
    j = rng.below(len(x))
    while True:
        new = random_partition(x.shape.n, rng)
        if new != x[j]:
            break
    coords = list(x.coords)
    coords[j] = new
    values[i] = PartitionTuple(coords)
    return Response(r.id, values)


# -- quality ------------------------------------------------------------------------

@dataclass
class QualityReport:
    D: int
    flags: list

    @property
    def passed(self):
        return not self.flags

    def __bool__(self):
        return self.passed


def quality_check(secret, w, D=3):
    """Flag responses equal to 0/1 or closer than ``D`` to each other, to ``s`` or to 0/1."""
    values = w.values if isinstance(w, Response) else respond(secret, w).values
    shape = secret.shape
    bot, tp = tuple_bottom(shape), tuple_top(shape)
    flags = []
    for i, r in enumerate(values, 1):
        if r == bot or r == tp:
            flags.append(("extreme", i))
        db, dt = tuple_distance(r, bot), tuple_distance(r, tp)
        if db < D:
            flags.append(("near_bottom", i, db))
        if dt < D:
            flags.append(("near_top", i, dt))
        for j, x in enumerate(secret.s, 1):
            d = tuple_distance(r, x)
            if d < D:
                flags.append(("near_secret", i, j, d))
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            d = tuple_distance(values[i], values[j])
            if d < D:
                flags.append(("near_response", i + 1, j + 1, d))
    return QualityReport(D, flags)


def default_threshold(shape, D=3):
    """Distance threshold used by the session policies: ``D`` capped at a quarter of the height.

    Sixteen values (eight responses, eight secret entries) that avoid 0, 1
    and each other by ``D`` do not fit into small lattices; a quarter of
    the height keeps steered challenges passing on ``P5^1`` .. ``P8^1``.
    """
    return max(1, min(D, shape.height // 4))


# -- one-time pad and commitments ------------------------------------------------------

def derive_vernam_key(r):
    values = r.values if isinstance(r, Response) else list(r)
    return "/".join(tuple_to_text(x) for x in values).encode("utf-8")


def xor_apply(key, message):
    if len(message) > len(key):
        raise InvalidArgument(f"message of {len(message)} bytes exceeds key of {len(key)} bytes")
    return bytes(a ^ b for a, b in zip(message, key))


@dataclass
class CommitRecord:
    challenge: Challenge
    response: Response

    def to_text(self):
        return self.challenge.line() + "\n" + self.response.line() + "\n"

    @classmethod
    def from_text(cls, text, shape=None):
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 2:
            raise ParseError("commitment record needs a CHALLENGE and a RESPONSE line")
        return cls(parse_challenge(lines[0]), parse_response(lines[1], shape))


def commit(secret, w):
    if not isinstance(w, Challenge):
        w = Challenge("", list(w), -1)
    return CommitRecord(w, respond(secret, w))


def verify_commit(record, revealed):
    try:
        return verify_response(revealed, record.challenge.terms, record.response.values)
    except (InvalidArgument, ShapeError):
        return False


def binding_search(record, shape, p, trials, seed):
    """Count random secrets reproducing the committed response (expected 0)."""
    hits = 0
    for i in range(trials):
        rng = XorShift64Star(substream_seed(seed, i))
        fake = Secret(shape, [_random_tuple(shape, rng) for _ in range(p)])
        if verify_commit(record, fake):
            hits += 1
    return hits


def structural_ok(challenge):
    """No term has an absorption site (``x(x+y)`` or ``x+xy`` patterns)."""
    return all(not absorption_sites(t) for t in challenge.terms)


# -- sessions ----------------------------------------------------------------------

class VerifierSession:
    """Server side state machine: HELLO -> CHALLENGE (RETRY)* -> RESPONSE -> RESULT."""

    def __init__(self, secret, q=8, steps=1000, seed=0, max_retries=16, steer=True, D=None):
        self.secret = secret
        self.steer = steer
        self.D = default_threshold(secret.shape) if D is None else D
        self.q = q
        self.steps = steps
        self.seed = seed
        self.max_retries = max_retries
        self.retries = 0
        self.issued = 0
        self.challenge = None
        self.status = None
        self.transcript = []

    @property
    def done(self):
        return self.status is not None

    def _new_challenge(self):
        seed = substream_seed(self.seed, self.issued)
        self.issued += 1
        self.challenge = make_challenge(self.secret.p, self.q, self.steps, seed,
                                        secret=self.secret if self.steer else None, D=self.D)
        return self.challenge.line()

    def _fail(self, reason):
        self.status = "ERROR"
        return f"ERROR {reason}"

    def handle(self, line):
        self.transcript.append(line)
        reply = self._handle(line.strip())
        if reply is not None:
            self.transcript.append(reply)
        return reply

    def _handle(self, line):
        if self.done:
            return self._fail("session closed")
        word = line.split(" ", 1)[0]
        if self.challenge is None:
            if word != "HELLO":
                return self._fail("expected HELLO")
            parts = line.split()
            if len(parts) != 5:
                return self._fail("malformed HELLO")
            _, version, shape, p, q = parts
            if version != str(PROTOCOL_VERSION):
                return self._fail(f"unsupported version {version}")
            if shape != str(self.secret.shape) or p != str(self.secret.p):
                return self._fail("shape or p mismatch")
            if q != str(self.q):
                return self._fail("q mismatch")
            return self._new_challenge()
        if word == "RETRY":
            if line.split()[1:] != [self.challenge.id]:
                return self._fail("unknown challenge id")
            self.retries += 1
            if self.retries > self.max_retries:
                self.status = "ABORT"
                return f"RESULT {self.challenge.id} ABORT"
            return self._new_challenge()
        if word == "RESPONSE":
            try:
                r = parse_response(line, self.secret.shape)
            except (ProtocolError, ParseError, ShapeError, ValueError):
                self.status = "FAIL"
                return f"RESULT {self.challenge.id} FAIL"
            ok = r.id == self.challenge.id and verify_response(self.secret, self.challenge, r)
            self.status = "OK" if ok else "FAIL"
            return f"RESULT {self.challenge.id} {self.status}"
        return self._fail(f"unexpected {word}")


class ProverSession:
    """Client side: answers challenges, asking for another while quality fails."""

    def __init__(self, secret, q=8, D=None, max_retries=8, tamper=None):
        self.secret = secret
        self.q = q
        self.D = default_threshold(secret.shape) if D is None else D
        self.max_retries = max_retries
        self.retries = 0
        self.tamper = tamper
        self.status = None
        self.transcript = []

    @property
    def done(self):
        return self.status is not None

    def hello(self):
        line = f"HELLO {PROTOCOL_VERSION} {self.secret.shape} {self.secret.p} {self.q}"
        self.transcript.append(line)
        return line

    def handle(self, line):
        self.transcript.append(line)
        reply = self._handle(line.strip())
        if reply is not None:
            self.transcript.append(reply)
        return reply

    def _handle(self, line):
        word = line.split(" ", 1)[0]
        if word == "CHALLENGE":
            w = parse_challenge(line, self.secret.p)
            r = respond(self.secret, w)
            if self.retries < self.max_retries and not quality_check(self.secret, r, self.D):
                self.retries += 1
                return f"RETRY {w.id}"
            if self.tamper is not None:
                r = self.tamper(r)
            return r.line()
        if word == "RESULT":
            self.status = line.split()[-1]
            return None
        self.status = "ERROR"
        return None


def run_session(verifier, prover):
    """Drive two sessions in memory; returns the prover's final status."""
    line = prover.hello()
    while True:
        reply = verifier.handle(line)
        if reply is None or verifier.done and not reply.startswith("RESULT"):
            return verifier.status
        line = prover.handle(reply)
        if line is None:
            return prover.status


def serve_stream(verifier, rfile, wfile):
    """Run ``verifier`` over a pair of text streams (stdio or a socket)."""
    for raw in rfile:
        reply = verifier.handle(raw.rstrip("\n"))
        if reply is not None:
            wfile.write(reply + "\n")
            wfile.flush()
        if verifier.done:
            break
    return verifier.status


def prove_stream(prover, rfile, wfile):
    wfile.write(prover.hello() + "\n")
    wfile.flush()
    for raw in rfile:
        reply = prover.handle(raw.rstrip("\n"))
        if prover.done or raw.startswith("ERROR"):
            break
        if reply is not None:
            wfile.write(reply + "\n")
            wfile.flush()
    return prover.status or "ERROR"


def make_server(secret, host, port, q=8, steps=1000, seed=0, max_retries=16):
    """Threaded TCP server; connection ``i`` gets challenges from substream ``(seed, i)``."""
    counter = {"next": 0}

    class Handler(socketserver.StreamRequestHandler):
        def handle(self):
            index = counter["next"]
            counter["next"] += 1
            session = VerifierSession(secret, q, steps, substream_seed(seed, index), max_retries)
            rfile = (ln.decode("utf-8") for ln in self.rfile)
            wfile = _SocketWriter(self.wfile)
            serve_stream(session, rfile, wfile)

    class Server(socketserver.ThreadingTCPServer):
        allow_reuse_address = True
        # server_close() waits for open sessions
        daemon_threads = False

    return Server((host, port), Handler)


class _SocketWriter:
    def __init__(self, raw):
        self.raw = raw

    def write(self, text):
        self.raw.write(text.encode("utf-8"))

    def flush(self):
        self.raw.flush()


def prove_tcp(prover, host, port, timeout=60.0):
    with socket.create_connection((host, port), timeout=timeout) as sock:
        rfile = sock.makefile("r", encoding="utf-8", newline="\n")
        wfile = sock.makefile("w", encoding="utf-8", newline="\n")
        try:
            return prove_stream(prover, rfile, wfile)
        finally:
            wfile.close()
            rfile.close()


def serve_stdio(verifier):
    return serve_stream(verifier, sys.stdin, sys.stdout)


def parse_address(text):
    host, sep, port = text.rpartition(":")
    if not sep or not port.isdigit():
        raise InvalidArgument(f"expected HOST:PORT, got {text!r}")
    return host or "127.0.0.1", int(port)
