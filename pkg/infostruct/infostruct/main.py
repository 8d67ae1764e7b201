# coding: utf8

import sys

from . import cli
from infostruct.tools.exceptions import InfoStructError
from infostruct.tools.iotools import commandline_to_json


def main(argv=None):

    parser = cli.parse_command_line()
    args = parser.parse_args(argv)

    try:
        status = args.func(args)
    except (InfoStructError, ValueError, OSError) as e:
        sys.stderr.write("infostruct %s: error: %s\n" % (args.task, e))
        return 1

    output_path = cli.output_path(args)
    if output_path is not None and output_path != "-":
        commandline_to_json(cli.run_config(args), output_path)

    return status


if __name__ == '__main__':
    sys.exit(main())
