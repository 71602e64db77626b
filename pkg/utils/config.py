import argparse
import logging

from .errors import ConfigError

logger = logging.getLogger(__name__)


def read_config(path):
    """ Read ``key = value`` lines; ``#`` starts a comment. """
    values = {}
    try:
        with open(path) as f:
            lines = f.readlines()
    except OSError as e:
        raise ConfigError("cannot read config file %s: %s" % (path, e))
    for lineno, line in enumerate(lines, 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError("%s:%d: expected 'key = value'" % (path, lineno))
        key, value = line.split('=', 1)
        key = key.strip().lstrip('-').replace('-', '_')
        values[key] = value.strip()
    return values


def _convert(action, raw):
    if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
        flag = raw.lower() in ('1', 'true', 'yes', 'on')
        return flag if isinstance(action, argparse._StoreTrueAction) else not flag
    convert = action.type or str
    if isinstance(action, argparse._AppendAction) or action.nargs in ('+', '*'):
        return [convert(v.strip()) for v in raw.split(',') if v.strip()]
    value = convert(raw)
    if action.choices is not None and value not in action.choices:
        raise ValueError("%r not in %s" % (value, list(action.choices)))
    return value


def apply_config(parser, opts, values):
    """Fill options the command line left at their defaults from config values.

    Flags given explicitly on the command line always take precedence.
    """
    actions = {a.dest: a for a in parser._actions}
    applied = {}
    for key, raw in values.items():
        if key not in actions or key == 'help':
            raise ConfigError("unknown config key '%s'" % key)
        if getattr(opts, key, None) != parser.get_default(key):
            continue
        try:
            applied[key] = _convert(actions[key], raw)
        except (TypeError, ValueError) as e:
            raise ConfigError("bad value for '%s': %s" % (key, e))
        setattr(opts, key, applied[key])
    logger.debug("config values applied: %s", applied)
    return opts
