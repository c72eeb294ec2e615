# shadowpca/cli/main.py
from __future__ import annotations

import logging
from typing import Optional

from shadowpca.core.errors import ShadowPcaError
from shadowpca.model import load_catalog

from shadowpca.cli.args import parse_args
from shadowpca.cli.commands import (
    cmd_compare,
    cmd_lattice,
    cmd_models,
    cmd_oracle,
    cmd_render,
    cmd_sample,
    cmd_spectrum,
    cmd_sweep,
)


def main(argv: Optional[list[str]] = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
    )

    try:
        if args.cmd == "spectrum":
            return cmd_spectrum(args)
        if args.cmd == "render":
            return cmd_render(args)

        catalog = load_catalog(args.metadata)

        if args.cmd == "models":
            return cmd_models(catalog=catalog)
        if args.cmd == "lattice":
            return cmd_lattice(args, catalog=catalog)
        if args.cmd == "sample":
            return cmd_sample(args, catalog=catalog)
        if args.cmd == "oracle":
            return cmd_oracle(args, catalog=catalog)
        if args.cmd == "compare":
            return cmd_compare(args, catalog=catalog)
        if args.cmd == "sweep":
            return cmd_sweep(args, catalog=catalog)

        return 2
    except ShadowPcaError as e:
        print(f"ERROR: {e.message}")
        if e.hint:
            print(f"Hint: {e.hint}")
        return e.exit_code
