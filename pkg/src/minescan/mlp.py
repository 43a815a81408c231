"""Multilayer feedforward network trained by online backpropagation.

Units use the sigmoid 1/(1+exp(-a*v)) with configurable slope a. The
bias is the final entry of the input vector (a constant), not a
per-layer unit, so a [4097, 90, 2] network has weight matrices of
exactly 90x4097 and 2x90. Weights start uniform in [0.01, 0.03].
Training presents samples one at a time in a fresh seeded permutation
each epoch and applies momentum updates after every sample.

backward is verified against a central finite-difference oracle
(gradient_check), which is the module's ground truth for correctness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

__all__ = [
    "Network",
    "Sample",
    "TrainParams",
    "TrainState",
    "TrainingReport",
    "ModelFormatError",
    "init_network",
    "forward",
    "backward",
    "apply_update",
    "sample_mse",
    "train_epoch",
    "train",
    "gradient_check",
    "save_model",
    "load_model",
]

MODEL_MAGIC = "MINESCAN-MLP v1"


@dataclass
class Network:
    layer_sizes: tuple
    weights: list            # one [fan_out x fan_in] matrix per layer
    slope: float = 1.0


class Sample(NamedTuple):
    input: np.ndarray        # length == layer_sizes[0], bias entry last
    desired: np.ndarray      # one-hot over classes


@dataclass(frozen=True)
class TrainParams:
    learning_rate: float = 0.01
    momentum: float = 0.2
    mse_target: float = 1e-5
    max_epochs: int = 20000
    divergence_window: int = 50
    rng_seed: int = 0


@dataclass
class TrainState:
    """Permutation RNG plus the momentum terms carried between epochs."""
    rng: np.random.Generator
    deltas: list
    _grads: list = field(default_factory=list, repr=False)
    _scratch: list = field(default_factory=list, repr=False)


@dataclass
class TrainingReport:
    epochs_run: int
    mse_history: list
    outcome: str             # converged | diverged | epoch-limit


class ModelFormatError(Exception):
    """Raised for unreadable or wrong-version model checkpoints."""


def init_network(layer_sizes, slope: float = 1.0, rng_seed: int = 0) -> Network:
    """Fresh network with every weight drawn uniformly from [0.01, 0.03]."""
    sizes = tuple(int(s) for s in layer_sizes)
    if len(sizes) < 2:
        raise ValueError("need at least an input and an output layer")
    if any(s < 1 for s in sizes):
        raise ValueError(f"layer sizes must be positive: {sizes}")
    if slope <= 0:
        raise ValueError("slope must be positive")
    rng = np.random.default_rng(rng_seed)
    weights = [rng.uniform(0.01, 0.03, size=(sizes[i + 1], sizes[i]))
               for i in range(len(sizes) - 1)]
    return Network(sizes, weights, float(slope))


def _sigmoid_inplace(v: np.ndarray, slope: float) -> np.ndarray:
    v *= -slope
    np.exp(v, out=v)
    v += 1.0
    np.reciprocal(v, out=v)
    return v


def forward(net: Network, input_vec: np.ndarray) -> list:
    """All layer activations, input first, output last."""
    x = np.asarray(input_vec, dtype=np.float64)
    if x.shape != (net.layer_sizes[0],):
        raise ValueError(
            f"input length {x.shape} does not match layer size {net.layer_sizes[0]}")
    acts = [x]
    for w in net.weights:
        acts.append(_sigmoid_inplace(w @ acts[-1], net.slope))
    return acts


def backward(net: Network, activations: list, desired: np.ndarray,
             out: list | None = None) -> list:
    """Gradients of E = 1/2 sum (output - desired)^2 for every weight.

    Output-layer deltas are (o-d)*a*o*(1-o); hidden deltas propagate
    through the transposed weights with the same sigmoid derivative.
    Pass `out` (matching buffers) to avoid reallocating gradients in
    hot loops.
    """
    a = net.slope
    output = activations[-1]
    desired = np.asarray(desired, dtype=np.float64)
    if desired.shape != output.shape:
        raise ValueError("desired/output length mismatch")
    if out is None:
        out = [np.empty_like(w) for w in net.weights]
    delta = (output - desired) * (a * output * (1.0 - output))
    for layer in range(len(net.weights) - 1, -1, -1):
        if layer > 0:
            h = activations[layer]
            prev_delta = (net.weights[layer].T @ delta) * (a * h * (1.0 - h))
        np.outer(delta, activations[layer], out=out[layer])
        if layer > 0:
            delta = prev_delta
    return out


def apply_update(net: Network, gradients: list, prev_deltas: list,
                 learning_rate: float, momentum: float) -> list:
    """Momentum step: dw = -lr*grad + momentum*dw_prev, applied in place.

    prev_deltas buffers are updated in place and returned for the next
    call; gradients are left untouched.
    """
    for w, g, d in zip(net.weights, gradients, prev_deltas):
        d *= momentum
        d += g * (-learning_rate)
        w += d
    return prev_deltas


def sample_mse(output: np.ndarray, desired: np.ndarray) -> float:
    """Per-sample error 1/2 sum (output - desired)^2."""
    output = np.asarray(output, dtype=np.float64)
    desired = np.asarray(desired, dtype=np.float64)
    if output.shape != desired.shape:
        raise ValueError("output/desired length mismatch")
    err = output - desired
    return 0.5 * float(err @ err)


def make_state(net: Network, rng_seed: int) -> TrainState:
    """Fresh training state: seeded permutation RNG, zero momentum terms."""
    return TrainState(
        rng=np.random.default_rng(rng_seed),
        deltas=[np.zeros_like(w) for w in net.weights],
    )


def train_epoch(net: Network, samples, params: TrainParams,
                state: TrainState) -> float:
    """One pass over a fresh permutation of the samples; returns mean MSE.

    Equivalent to forward / sample_mse / backward / apply_update per
    sample, with gradient buffers reused across samples.
    """
    if len(samples) < 1:
        raise ValueError("need at least one sample")
    if not state._grads:
        state._grads = [np.empty_like(w) for w in net.weights]
        state._scratch = [np.empty_like(w) for w in net.weights]
    lr, mom = params.learning_rate, params.momentum
    total = 0.0
    for idx in state.rng.permutation(len(samples)):
        sample = samples[idx]
        acts = forward(net, sample.input)
        total += sample_mse(acts[-1], sample.desired)
        backward(net, acts, sample.desired, out=state._grads)
        # same arithmetic as apply_update, without temporaries
        for w, g, d, s in zip(net.weights, state._grads, state.deltas,
                              state._scratch):
            d *= mom
            np.multiply(g, -lr, out=s)
            d += s
            w += d
    return total / len(samples)


def train(net: Network, samples, params: TrainParams) -> TrainingReport:
    """Run epochs until the MSE target, divergence, or the epoch limit.

    Divergence fires when the epoch MSE is non-finite, when it stays a
    factor >= 10 above its running minimum for divergence_window
    consecutive epochs, or when it is flat to within rounding noise for
    that many epochs while the target is unmet (the saturated stall
    that huge learning rates produce).
    """
    state = make_state(net, params.rng_seed)
    history: list = []
    running_min = np.inf
    above_streak = 0
    flat_streak = 0
    prev_mse = None
    outcome = "epoch-limit"
    while len(history) < params.max_epochs:
        mse = train_epoch(net, samples, params, state)
        history.append(mse)
        if not np.isfinite(mse):
            outcome = "diverged"
            break
        if mse < params.mse_target:
            outcome = "converged"
            break
        if mse >= 10.0 * running_min:
            above_streak += 1
            if above_streak >= params.divergence_window:
                outcome = "diverged"
                break
        else:
            above_streak = 0
        running_min = min(running_min, mse)
        if prev_mse is not None and abs(mse - prev_mse) <= 1e-12 * mse:
            flat_streak += 1
            if flat_streak >= params.divergence_window:
                outcome = "diverged"
                break
        else:
            flat_streak = 0
        prev_mse = mse
    return TrainingReport(len(history), history, outcome)


def _sample_error(net: Network, sample: Sample) -> float:
    return sample_mse(forward(net, sample.input)[-1], sample.desired)


def gradient_check(net: Network, sample: Sample, eps: float = 1e-5) -> float:
    """Max relative error between backward and central finite differences."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    acts = forward(net, sample.input)
    analytic = backward(net, acts, sample.desired)
    worst = 0.0
    for w, g in zip(net.weights, analytic):
        it = np.nditer(w, flags=["multi_index"])
        for _ in it:
            ij = it.multi_index
            orig = w[ij]
            w[ij] = orig + eps
            e_plus = _sample_error(net, sample)
            w[ij] = orig - eps
            e_minus = _sample_error(net, sample)
            w[ij] = orig
            numeric = (e_plus - e_minus) / (2.0 * eps)
            denom = max(abs(g[ij]), abs(numeric), 1e-12)
            worst = max(worst, abs(g[ij] - numeric) / denom)
    return worst


def save_model(net: Network, path) -> None:
    """Text checkpoint; floats use repr so the round trip is bit-exact."""
    lines = [MODEL_MAGIC,
             " ".join([repr(float(net.slope))] + [str(s) for s in net.layer_sizes])]
    for w in net.weights:
        for row in w:
            lines.append(" ".join(repr(float(v)) for v in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_model(path) -> Network:
    """Load a checkpoint written by save_model."""
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != MODEL_MAGIC:
        raise ModelFormatError(f"bad magic line (expected {MODEL_MAGIC!r})")
    try:
        head = lines[1].split()
        slope = float(head[0])
        sizes = tuple(int(s) for s in head[1:])
    except (IndexError, ValueError) as exc:
        raise ModelFormatError(f"bad header: {exc}") from exc
    if len(sizes) < 2:
        raise ModelFormatError("header lists fewer than two layers")
    weights = []
    row_iter = iter(lines[2:])
    for i in range(len(sizes) - 1):
        fan_out, fan_in = sizes[i + 1], sizes[i]
        rows = []
        for _ in range(fan_out):
            try:
                text = next(row_iter)
            except StopIteration:
                raise ModelFormatError("truncated checkpoint") from None
            vals = text.split()
            if len(vals) != fan_in:
                raise ModelFormatError(
                    f"row has {len(vals)} weights, expected {fan_in}")
            rows.append([float(v) for v in vals])
        weights.append(np.array(rows, dtype=np.float64))
    return Network(sizes, weights, slope)
