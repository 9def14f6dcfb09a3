# -*- coding: utf-8 -*-
from leafscan.cli import cli


def main():
    # Same as running the installed leafscan command.
    cli()


if __name__ == "__main__":
    main()
