"""Interactive security experiments for the aggregate scheme.

Three pieces live here.

The assumption game: a challenger holding a random key (g2, X, Y)
answers two oracles, one handing out fresh random G1 points and one
raising a previously issued point to x + m y, at most once per point.
The adversary wins by producing (A*, B*, m*) with a never-queried m*,
a non-identity A*, and B* = A*^(x + m* y).

The scheme game: a challenger runs the synchronized certified-key
unforgeability experiment, with a certification oracle that takes
custody of registered secrets and a signing oracle whose period
counter advances on every query, skipped or not.  Its judge reports
each acceptance clause separately so tests can pin which clause a
rigged forgery trips.

The reduction: an assumption-game adversary that simulates the scheme
game for a forger by programming the period hash from oracle0 points
and the message hash from lazily sampled scalars, answers signing
queries through oracle1, and converts any valid forgery into an
assumption break by stripping the certified co-signers' contributions
out of the aggregate.  Its abort taxonomy is explicit, and the loss
terms of the underlying advantage bound are reported in both readings
(per-query and birthday) without taking sides.

The forger factories at the bottom are harness adversaries: the
experiment needs a forgery to convert, so the winning ones are handed
the target exponents from outside the game, which no real attacker
would have.
"""

from dataclasses import dataclass

from .groups import (
    G1Element,
    Scalar,
    hash_to_scalar,
    random_g1_nonidentity,
    random_g2_nonidentity,
    random_scalar,
)
from .ps_sig import PsPublicKey
from .sas import (
    SasParams,
    SasPublicKey,
    SasSecretKey,
    SasSignature,
    sas_aggregate_verify,
    sas_keygen,
    sas_setup,
    sas_sign,
)

# --------------------------------------------------------- assumption

class GpsChallenger:
    """Holds the secret exponents; exposes the two oracles and the judge."""

    def __init__(self, ctx, rng=None):
        self.ctx = ctx
        g2 = random_g2_nonidentity(ctx, rng)
        self._x = random_scalar(ctx, rng)
        self._y = random_scalar(ctx, rng)
        self.pk = PsPublicKey(g2, g2 ** self._x, g2 ** self._y)
        self._rng = rng
        self._issued = set()
        self._answered = set()
        self._messages = set()

    def oracle0(self):
        """A fresh uniformly random non-identity G1 point."""
        a = random_g1_nonidentity(self.ctx, self._rng)
        while a in self._issued:
            a = random_g1_nonidentity(self.ctx, self._rng)
        self._issued.add(a)
        return a

    def oracle1(self, a, m):
        """a^(x + m y) for an issued a, at most once per point; None
        answers anything else."""
        if a not in self._issued or a in self._answered:
            return None
        self._answered.add(a)
        m = Scalar(int(m))
        self._messages.add(int(m))
        return a ** (self._x + m * self._y)

    def judge(self, a_star, b_star, m_star):
        m = Scalar(int(m_star))
        if int(m) in self._messages:
            return False
        if not isinstance(a_star, G1Element) or a_star.is_identity:
            return False
        return b_star == a_star ** (self._x + m * self._y)

    def view(self):
        return GpsOracleView(self.pk, self.oracle0, self.oracle1)

    def leak_exponents(self):
        """Test harness backdoor; see the module docstring."""
        return self._x, self._y


@dataclass(frozen=True)
class GpsOracleView:
    pk: PsPublicKey
    oracle0: object
    oracle1: object


# ------------------------------------------------------- scheme game

@dataclass(frozen=True)
class Forgery:
    pairs: tuple  # ((public key, message bytes), ...)
    agg: SasSignature


@dataclass(frozen=True)
class EufResult:
    verifies: bool
    all_certified: bool
    target_included: bool
    fresh: bool

    @property
    def win(self):
        return self.verifies and self.all_certified and self.target_included and self.fresh


class _CountingH2:
    """Wraps an H2 implementation, counting distinct (t, message) queries."""

    def __init__(self, fn):
        self.fn = fn
        self.seen = {}

    def __call__(self, t, msg):
        key = (t, bytes(msg))
        out = self.seen.get(key)
        if out is None:
            out = self.fn(t, msg)
            self.seen[key] = out
        return out

    @property
    def count(self):
        return len(self.seen)


class HonestEufChallenger:
    """The certified-key synchronized unforgeability game, played straight."""

    def __init__(self, ctx, max_periods, rng=None):
        self.params = sas_setup(ctx, max_periods, rng)
        tag = self.params.h2_tag
        self._h2 = _CountingH2(lambda t, msg: hash_to_scalar(ctx, tag, t, msg))
        self.params.h2_override = self._h2
        self._sk, self.target_pk = sas_keygen(self.params, rng)
        self._registered = {}
        self._signed = set()
        self._t_next = 1
        self.q_sign = 0
        self.q_skip = 0

    @property
    def q_h2(self):
        return self._h2.count

    def leak_exponents(self):
        """Test harness backdoor, same shape as the assumption game's."""
        return self._sk.x, self._sk.y

    def certify(self, pk, sk):
        """Certification oracle: takes custody of the secret, accepts
        only a consistent pair."""
        if self.params.g2 ** sk.x != pk.X or self.params.g2 ** sk.y != pk.Y:
            return False
        self._registered[pk] = sk
        return True

    def sign_next(self, msg=None):
        """One signing query.  None skips the period.  Returns (t, sig)
        with sig None for a skip, or None once periods are exhausted.
        The counter moves on every query."""
        if self._t_next > self.params.max_periods:
            return None
        t = self._t_next
        self._t_next = t + 1
        if msg is None:
            self.q_skip += 1
            return t, None
        self.q_sign += 1
        self._signed.add((t, bytes(msg)))
        return t, sas_sign(self.params, self._sk, t, msg)

    def judge(self, forgery):
        pairs = list(forgery.pairs)
        verifies = sas_aggregate_verify(self.params, pairs, forgery.agg)
        certified = all(pk == self.target_pk or pk in self._registered for pk, _ in pairs)
        target_msgs = [msg for pk, msg in pairs if pk == self.target_pk]
        included = len(target_msgs) > 0
        fresh = included and all(
            (forgery.agg.t, bytes(m)) not in self._signed for m in target_msgs
        )
        return EufResult(verifies, certified, included, fresh)


# ---------------------------------------------------------- reduction

class ReductionChallenger:
    """Simulates the scheme game on top of the assumption oracles.

    The period hash is programmed to return oracle0 points, so every
    signing answer is exactly one oracle1 query; the message hash is a
    lazily sampled random scalar table.  finalize() converts a forgery
    into an assumption answer or reports which abort fired.
    """

    def __init__(self, view, ctx, max_periods, rng=None):
        self.view = view
        self._rng = rng
        self._t1 = {}
        self._h2 = _CountingH2(lambda t, msg: random_scalar(ctx, rng))
        self.params = SasParams(
            ctx,
            view.pk.g2,
            max_periods,
            h1_override=self._h1,
            h2_override=self._h2,
        )
        self.target_pk = SasPublicKey(view.pk.X, view.pk.Y)
        self._registered = {}
        self._signed = set()
        self._oracle1_messages = set()
        self._t_next = 1
        self.q_sign = 0
        self.q_skip = 0

    @property
    def q_h2(self):
        return self._h2.count

    def _h1(self, t):
        pt = self._t1.get(t)
        if pt is None:
            pt = self.view.oracle0()
            self._t1[t] = pt
        return pt

    def certify(self, pk, sk):
        if self.params.g2 ** sk.x != pk.X or self.params.g2 ** sk.y != pk.Y:
            return False
        self._registered[pk] = sk
        return True

    def sign_next(self, msg=None):
        if self._t_next > self.params.max_periods:
            return None
        t = self._t_next
        self._t_next = t + 1
        if msg is None:
            self.q_skip += 1
            return t, None
        self.q_sign += 1
        m_prime = self._h2(t, msg)
        b = self.view.oracle1(self._h1(t), m_prime)
        if b is None:
            raise RuntimeError("oracle1 refused a fresh period point")
        self._oracle1_messages.add(int(m_prime))
        self._signed.add((t, bytes(msg)))
        return t, SasSignature(b, t)

    def _judge(self, forgery):
        pairs = list(forgery.pairs)
        verifies = sas_aggregate_verify(self.params, pairs, forgery.agg)
        certified = all(pk == self.target_pk or pk in self._registered for pk, _ in pairs)
        target_msgs = [msg for pk, msg in pairs if pk == self.target_pk]
        included = len(target_msgs) > 0
        fresh = included and all(
            (forgery.agg.t, bytes(m)) not in self._signed for m in target_msgs
        )
        return EufResult(verifies, certified, included, fresh)

    def finalize(self, forgery):
        """Returns (answer, abort, clause_result); answer is the
        assumption-game triple (A*, B*, m*) or None when an abort fired:

        * no-valid-forgery: the forgery loses the scheme game outright
        * h2-collision: the forged message hash equals one already spent
          on a signing answer, so it is not fresh downstairs
        """
        euf = self._judge(forgery)
        if not euf.win:
            return None, "no-valid-forgery", euf
        t_star = forgery.agg.t
        strip = Scalar(0)
        m_star = None
        for pk, msg in forgery.pairs:
            if pk == self.target_pk:
                m_star = self._h2(t_star, msg)
            else:
                sk = self._registered[pk]
                strip = strip + sk.x + self._h2(t_star, msg) * sk.y
        if int(m_star) in self._oracle1_messages:
            return None, "h2-collision", euf
        a_star = self._h1(t_star)
        b_prime = forgery.agg.B * (a_star ** strip).inverse()
        return (a_star, b_prime, m_star), None, euf


def run_reduction_once(ctx, max_periods, adversary_factory, rng):
    """One full conversion experiment.  adversary_factory(leak, rng) must
    return a callable taking the challenger surface and returning a
    Forgery; leak is the target-exponent backdoor the harness forgers
    need.  Returns a dict with the outcome and query counts."""
    gps = GpsChallenger(ctx, rng)
    red = ReductionChallenger(gps.view(), ctx, max_periods, rng)
    adversary = adversary_factory(gps.leak_exponents(), rng)
    forgery = adversary(red)
    answer, abort, euf = red.finalize(forgery)
    won = bool(answer) and gps.judge(*answer)
    return {
        "won": won,
        "abort": abort,
        "euf": euf,
        "q_sign": red.q_sign,
        "q_skip": red.q_skip,
        "q_h2": red.q_h2,
    }


def run_honest_game(ctx, max_periods, adversary, rng):
    """The scheme game against the honest challenger; returns the
    per-clause judgment plus query counts."""
    ch = HonestEufChallenger(ctx, max_periods, rng)
    forgery = adversary(ch)
    euf = ch.judge(forgery)
    return euf, {"q_sign": ch.q_sign, "q_skip": ch.q_skip, "q_h2": ch.q_h2}


# ----------------------------------------------------------- forgers

def forging_adversary(leak, rng, coalition=2, warmup=2):
    """A winning forger: signs a little, registers a small coalition,
    then uses the leaked exponents to forge for an untouched period."""
    x, y = leak

    def run(env):
        params = env.params
        for i in range(warmup):
            env.sign_next(b"warmup-%d" % i)
        env.sign_next(None)
        own = []
        for _ in range(coalition):
            sk, pk = sas_keygen(params, rng)
            if not env.certify(pk, sk):
                raise RuntimeError("honest registration refused")
            own.append((sk, pk))
        t_star = params.max_periods
        m_star = b"forged-" + random_scalar(params.ctx, rng).to_bytes()[-8:]
        b_total = params.h1(t_star) ** (x + params.h2(t_star, m_star) * y)
        pairs = [(env.target_pk, m_star)]
        for i, (sk, pk) in enumerate(own):
            msg = b"co-signer-%d" % i
            sig = sas_sign(params, sk, t_star, msg)
            b_total = b_total * sig.B
            pairs.append((pk, msg))
        return Forgery(tuple(pairs), SasSignature(b_total, t_star))

    return run


def replay_adversary(rng=None):
    """Hands back a signature it legitimately asked for; loses on
    freshness and nothing else."""

    def run(env):
        msg = b"replayed claim"
        t, sig = env.sign_next(msg)
        return Forgery(((env.target_pk, msg),), sig)

    return run


def uncertified_coalition_adversary(leak, rng):
    """Forges like forging_adversary but leaves its co-signer key
    unregistered; loses on the certification clause."""
    x, y = leak

    def run(env):
        params = env.params
        sk, pk = sas_keygen(params, rng)
        t_star = params.max_periods
        m_star = b"forged-without-cert"
        b_total = params.h1(t_star) ** (x + params.h2(t_star, m_star) * y)
        msg = b"uncertified co-signer"
        sig = sas_sign(params, sk, t_star, msg)
        return Forgery(
            ((env.target_pk, m_star), (pk, msg)),
            SasSignature(b_total * sig.B, t_star),
        )

    return run


# ------------------------------------------------------------- bounds

def advantage_terms(q_sign, q_h2, order):
    """Loss terms separating the forger's advantage from the reduction's.

    The signing term covers a period-point collision among q_s issued
    points.  For the message-hash term two readings circulate, a
    per-query count and a birthday count; both are returned and the
    caller picks its poison.
    """
    return {
        "sign_collision": q_sign * q_sign / (order - 1),
        "h2_per_query": q_h2 / order,
        "h2_birthday": q_h2 * q_h2 / order,
    }
