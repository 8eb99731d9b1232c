from cli.app import build_parser, main
from cli.config import Config, RunInputs, load_config
