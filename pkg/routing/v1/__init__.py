from routing.v1 import catalog, construct, eliminate, report, sieve, verify

COMMANDS = [catalog, sieve, eliminate, construct, verify, report]


def register_commands(subparsers) -> None:
    for command in COMMANDS:
        command.register(subparsers)


__all__ = ["COMMANDS", "register_commands"]
