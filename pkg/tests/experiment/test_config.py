import json
import os
from unittest import TestCase

from tsalloc.experiment import ConfigError, ExperimentConfig

from ..utils import one_type_instance

GENERATOR = dict(n_resources=2, n_types=2, n_channels=2, T=200)


class TestExperimentConfig(TestCase):
    def test_defaults_and_overrides(self):
        config = ExperimentConfig(generator=GENERATOR).validate()
        self.assertEqual(config.algorithm, "algA1")
        updated = config.updated(epsilon=0.2, trials=None, algorithm="ptilde")
        self.assertEqual(updated.epsilon, 0.2)
        self.assertEqual(updated.trials, config.trials)
        self.assertEqual(updated.algorithm, "ptilde")
        self.assertEqual(config.epsilon, 0.1)

    def test_unknown_keys(self):
        with self.assertRaisesRegex(ConfigError, "Unknown configuration keys"):
            ExperimentConfig.from_dict(dict(generator=GENERATOR, epsilom=0.1))

    def test_invalid_values(self):
        invalid = [
            dict(generator=GENERATOR, algorithm="greedy"),
            dict(generator=GENERATOR, epsilon=0.0),
            dict(generator=GENERATOR, epsilon=1.0),
            dict(generator=GENERATOR, trials=0),
            dict(generator=GENERATOR, format="xml"),
            dict(generator=GENERATOR, workers=0),
            dict(generator=GENERATOR, gamma1=-1.0),
            dict(generator=GENERATOR, epsilons=[0.1, 1.5]),
            dict(),
            dict(generator=GENERATOR, instance="instance.json"),
        ]
        for document in invalid:
            with self.assertRaises(ConfigError, msg=str(document)):
                ExperimentConfig.from_dict(document).validate()

    def test_generated_instance(self):
        config = ExperimentConfig(generator=dict(GENERATOR, seed=4))
        inst = config.load_instance()
        self.assertEqual((inst.T, inst.n_resources, inst.n_types, inst.n_channels), (200, 2, 2, 3))
        self.assertEqual(config.load_instance(T=500).T, 500)

    def test_inline_instance(self):
        document = one_type_instance(T=100, L=20.0).to_dict()
        inst = ExperimentConfig(instance=document).load_instance(T=300)
        self.assertEqual(inst.T, 300)
        self.assertAlmostEqual(inst.L[0], 60.0)
        self.assertAlmostEqual(inst.U[0], 300.0)

    def test_invalid_instance(self):
        document = one_type_instance(T=100).to_dict()
        document["L"] = [200.0]
        with self.assertRaisesRegex(ConfigError, "L exceeds U"):
            ExperimentConfig(instance=document).load_instance()
        with self.assertRaises(ConfigError):
            ExperimentConfig(instance="/nonexistent/instance.json").load_instance()


def test_from_json(save_path):
    path = os.path.join(save_path, "config.json")
    with open(path, "w") as f:
        json.dump(dict(generator=GENERATOR, algorithm="algA", epsilon=0.05), f)
    config = ExperimentConfig.from_json(path).validate()
    assert config.algorithm == "algA"
    assert config.epsilon == 0.05
    assert ExperimentConfig.from_dict(config.to_dict()) == config

    with open(path, "w") as f:
        f.write("[1, 2]")
    try:
        ExperimentConfig.from_json(path)
    except ConfigError as error:
        assert "not a JSON object" in str(error)
    else:
        raise AssertionError("a JSON list is not a configuration")
