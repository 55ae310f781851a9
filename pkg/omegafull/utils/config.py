# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import logging
import os

from omegaconf import OmegaConf

from omegafull.configs import omegafull_default_config
from omegafull.logging import setup_logging
from omegafull.utils import utils

logger = logging.getLogger("omegafull")


def write_config(cfg, output_dir, name="config.yaml"):
    logger.debug(OmegaConf.to_yaml(cfg))
    saved_cfg_path = os.path.join(output_dir, name)
    utils.atomic_write(saved_cfg_path, OmegaConf.to_yaml(cfg))
    return saved_cfg_path


def get_cfg_from_args(args):
    opts = list(getattr(args, "opts", None) or [])
    if getattr(args, "output_dir", None):
        args.output_dir = os.path.abspath(args.output_dir)
        opts += [f"run.output_dir={args.output_dir}"]
    if getattr(args, "seed", None) is not None:
        opts += [f"run.seed={args.seed}"]
    if getattr(args, "log_level", None):
        opts += [f"run.log_level={args.log_level}"]
    default_cfg = OmegaConf.create(omegafull_default_config)
    config_file = getattr(args, "config_file", None)
    file_cfg = OmegaConf.load(config_file) if config_file else OmegaConf.create()
    cfg = OmegaConf.merge(default_cfg, file_cfg, OmegaConf.from_cli(opts))
    return cfg


def default_setup(args, cfg):
    level = getattr(logging, str(cfg.run.log_level).upper(), logging.INFO)
    log_output = args.output_dir if getattr(args, "output_dir", None) else None
    setup_logging(output=log_output, level=level)

    utils.fix_random_seeds(cfg.run.seed)
    logger.debug("git:\n  {}\n".format(utils.get_sha()))
    logger.debug("\n".join("%s: %s" % (k, str(v)) for k, v in sorted(dict(vars(args)).items())))


def setup(args):
    """
    Create configs and perform basic setups.
    """
    cfg = get_cfg_from_args(args)
    default_setup(args, cfg)
    if getattr(args, "output_dir", None):
        os.makedirs(args.output_dir, exist_ok=True)
        write_config(cfg, args.output_dir)
    return cfg
