import os
from typing import List, Optional

import yaml
from tap import Tap

from pentagram.errors import BadArguments

COMMANDS = ("generate", "apply", "coeffs", "verify", "spectrum", "plot")


class ConfigArgparser(Tap):
    config: str = ""  # YAML file whose keys become defaults, e.g. cfgs/verify/v1.0.0-duality.yaml


class PentagramArgparser(Tap):
    command: str = ""
    suite: Optional[str] = None  # verify only

    config: str = ""

    # I/O
    input: Optional[str] = None  # polygon or vertex document, "-" for stdin; a seeded random polygon when omitted
    output: Optional[str] = None  # stdout when omitted
    format: Optional[str] = "json"

    # Polygon
    d: Optional[int] = 3
    n: Optional[int] = 7
    seed: Optional[int] = None  # mandatory for generate and random verification
    bound: Optional[int] = 5  # numerators and denominators of random coefficients
    max_retries: Optional[int] = 100
    corrugated: bool = False
    partially_corrugated: Optional[str] = None  # "q,r,l"
    allow_small: bool = False  # permit n < d+2

    # Map
    map: Optional[str] = None  # MapSpec JSON, e.g. '{"variant": "dented", "m": 1}'
    variant: Optional[str] = None  # generalized | dented | deep_dented | short_diagonal | corrugated | partially_corrugated
    m: Optional[int] = None
    p: Optional[int] = None
    I: Optional[str] = None  # jump tuple, e.g. "1,2"
    J: Optional[str] = None
    q: Optional[int] = None
    r: Optional[int] = None
    l: Optional[int] = None
    iterations: Optional[int] = 1
    trace: bool = False  # apply: also emit each step

    # Verification
    trials: Optional[int] = 5  # seeds seed..seed+trials-1
    s: Optional[str] = None  # scaling parameter, a rational like "-1/2"
    ns: Optional[List[int]] = None  # polygon sizes for the spectral suites

    # Spectrum
    lax: Optional[str] = None  # registered Lax variant; derived from the map when omitted
    genus: bool = False

    # Plot
    chart: Optional[str] = None  # "h,x,y", default 2,0,1 (d=2) and 3,0,1 (d=3)

    version: Optional[str] = ""

    def configure(self):
        self.add_argument("command", choices=COMMANDS)
        self.add_argument("suite", nargs="?", default=None)

    def todict(self):
        d = dict()
        for k, v in self.__dict__.items():
            if not k.startswith("_"):
                d[k] = v
        return d

    @property
    def has_map(self) -> bool:
        return self.map is not None or self.variant is not None


def validate(args: PentagramArgparser) -> PentagramArgparser:
    if args.suite is not None and args.command != "verify":
        raise BadArguments(f"unexpected positional argument {args.suite!r} for {args.command}")
    if args.command == "verify" and args.suite is None:
        raise BadArguments("verify needs a suite name")
    if args.format != "json":
        raise BadArguments(f"only --format json is supported, got {args.format!r}")
    if args.d is not None and args.d < 2:
        raise BadArguments(f"dimension must be at least 2, got d={args.d}")
    if args.n is not None and args.d is not None and args.n < args.d + 2 and not args.allow_small:
        raise BadArguments(f"need n >= d+2 (or --allow_small), got d={args.d}, n={args.n}")
    if args.command == "generate" and args.seed is None:
        raise BadArguments("generate needs --seed")
    if args.command == "generate" and args.corrugated and args.partially_corrugated:
        raise BadArguments("--corrugated and --partially_corrugated are exclusive")
    if args.command in ("apply", "coeffs", "spectrum", "plot") and args.input is None and args.seed is None:
        raise BadArguments(f"{args.command} needs --input (or --seed for a random polygon)")
    if args.input is not None and args.input != "-" and not os.path.isfile(args.input):
        raise BadArguments(f"input file {args.input!r} does not exist")
    if args.command == "apply" and not args.has_map:
        raise BadArguments("apply needs --map or --variant")
    if args.iterations is not None and args.iterations < 0:
        raise BadArguments(f"iterations must be non-negative, got {args.iterations}")
    if args.trials is not None and args.trials < 1:
        raise BadArguments(f"trials must be positive, got {args.trials}")
    return args


def get_args(argv: Optional[List[str]] = None) -> PentagramArgparser:
    config_parser = ConfigArgparser(description="Pentagram map toolkit", add_help=False)
    args_config = config_parser.parse_args(argv, known_only=True)
    remaining: List[str] = args_config.extra_args

    parser = PentagramArgparser(description="Pentagram map toolkit")
    if args_config.config:
        with open(args_config.config, "r") as f:
            cfg = yaml.safe_load(f) or {}
            parser.set_defaults(**cfg)

    # explicit flags override the config file
    args = parser.parse_args(remaining)
    args.config = args_config.config
    args.version = os.path.basename(args_config.config).split(".yaml")[0]
    return validate(args)
