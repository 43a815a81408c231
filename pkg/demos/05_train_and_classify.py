"""A miniature end-to-end run: synthesize, train, classify.

Uses two tiny solid-color classes and a small hidden layer so the
whole script finishes in about a second. The full-size counterpart is
the CLI flow:

    minescan synth --suite paper --out-dir suite
    minescan --config suite/suite.cfg train --manifest suite/manifest.tsv \
        --model suite/model.txt
    minescan --config suite/suite.cfg classify --model suite/model.txt \
        --in suite/eval_two_object.ppm
"""

from minescan.color import FeatureParams
from minescan.mlp import TrainParams, init_network, train
from minescan.pipeline import build_training_set, classify_scene, format_report
from minescan.scenes import SceneObject, SceneSpec, gen_synthetic_scene
from minescan.segment import SegParams

seg = SegParams(threshold=85.0)
feat = FeatureParams(aggregate="weighted", hue_weight=1.0, scale_factor=1.0)


def solid(shape, cx, cy, radius, rgb, cls):
    return SceneObject(class_index=cls, shape=shape, cx=cx, cy=cy,
                       radius=radius, body_rgb=rgb, mark_rgb=None)


def scene(size, *objects):
    return gen_synthetic_scene(SceneSpec(size, size, objects), rng_seed=0).image


# one training scene per class: a red disc and a blue square
labeled = [
    (scene(64, solid("disc", 32, 32, 20, (230, 40, 40), 0)), 0),
    (scene(64, solid("square", 32, 32, 18, (40, 40, 230), 1)), 1),
]
samples = build_training_set(labeled, "none", seg, feat)
print(f"{len(samples)} training samples of {len(samples[0].input)} features")

net = init_network([len(samples[0].input), 8, 2], slope=1.0, rng_seed=1)
report = train(net, samples, TrainParams(learning_rate=0.5, momentum=0.9,
                                         mse_target=1e-3, max_epochs=3000))
print(f"training: {report.outcome} after {report.epochs_run} epochs, "
      f"mse {report.mse_history[-1]:.2e}")

# now both objects in one larger frame, at new positions
test = scene(120, solid("disc", 30, 30, 20, (230, 40, 40), 0),
             solid("square", 85, 85, 16, (40, 40, 230), 1))
detections = classify_scene(net, test, "none", seg, feat)
print(format_report(detections, class_names=("red-disc", "blue-square")), end="")
