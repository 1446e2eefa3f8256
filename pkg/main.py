import logging
from pathlib import Path

import hydra
from omegaconf import DictConfig, OmegaConf

from nilop.acceptance import run_acceptance
from nilop.config import NilopConfig
from nilop.modules.homs import enumerate_indecomposables, to_json_lines
from nilop.observability import setup_logging
from nilop.triangle.roots import diff_table

logger = logging.getLogger(__name__)


@hydra.main(config_path="./configs", config_name="config", version_base="1.1")
def main(cfg: DictConfig):
    config = NilopConfig.from_dict(cfg["nilop"])
    setup_logging(config.log_level)
    task = cfg["task"]
    logger.info(f"Running task {task.name} with {OmegaConf.to_yaml(cfg['nilop'])}")

    if task.name == "accept":
        results = run_acceptance(config, task.get("only"))
        for result in results:
            print(result)
        failed = sum(1 for r in results if not r.passed)
        logger.info(f"{len(results) - failed}/{len(results)} checks passed")
    elif task.name == "enumerate":
        pairs = enumerate_indecomposables(task.n, task.vmax, config.p, config)
        output = Path(task.output)
        output.write_text(to_json_lines(pairs))
        logger.info(f"Wrote {len(pairs)} classes of S({task.n}) to {output.resolve()}")
    elif task.name == "roots":
        diffs = diff_table()
        for diff in diffs:
            print(diff)
        logger.info(f"{len(diffs)} differences in the root table")
    else:
        raise ValueError(f"Unknown task: {task.name}. Supported tasks are: ['accept', 'enumerate', 'roots']")


if __name__ == "__main__":
    main()
