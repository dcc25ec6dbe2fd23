"""
Консольная точка входа lfac.

lfac <команда> [аргументы] запускает management-команду Django с тем же
именем. Неизвестная команда - ошибка использования, код 2.
"""
import os
import sys

COMMANDS = ("eval", "lfactor", "poles", "split", "ideals", "verify")

USAGE = f"""usage: lfac <command> [options]

commands: {", ".join(COMMANDS)}
run "lfac <command> --help" for the options of a command
"""


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if argv and argv[0] in ("-h", "--help"):
        sys.stdout.write(USAGE)
        return 0
    if not argv or argv[0] not in COMMANDS:
        sys.stderr.write(USAGE)
        if argv:
            sys.stderr.write(f"lfac: unknown command {argv[0]!r}\n")
        return 2
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "lfacsite.settings")
    from django.core.management import execute_from_command_line

    execute_from_command_line(["lfac", *argv])
    return 0


if __name__ == "__main__":
    sys.exit(main())
