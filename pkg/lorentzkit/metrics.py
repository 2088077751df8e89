"""
lorentzkit/metrics.py

Prometheus metrics for checks, solver calls and command failures.
"""

from prometheus_client import Counter, Gauge, start_http_server

from .logger import logger

# === METRICS ===

CHECKS_RUN = Counter("lorentzkit_checks_total", "Number of report checks evaluated", ["command"])
CHECKS_FAILED = Counter("lorentzkit_checks_failed_total", "Number of report checks that failed", ["command"])
SOLVES = Counter("lorentzkit_boost_solves_total", "Number of N_1 v = u solves")
COMMAND_ERRORS = Counter("lorentzkit_command_errors_total", "Commands aborted by an error", ["command"])
LAST_REPORT_SECONDS = Gauge("lorentzkit_last_report_seconds", "Wall time of the last finished report")

EXPORTED = (
    "lorentzkit_checks_total",
    "lorentzkit_checks_failed_total",
    "lorentzkit_boost_solves_total",
    "lorentzkit_command_errors_total",
    "lorentzkit_last_report_seconds",
)

# === HELPERS ===

def inc_solve():
    SOLVES.inc()


def inc_command_error(command):
    COMMAND_ERRORS.labels(command=command).inc()


def record_report(report):
    CHECKS_RUN.labels(command=report.command).inc(len(report.checks))
    failed = sum(1 for check in report.checks if not check.passed)
    if failed:
        CHECKS_FAILED.labels(command=report.command).inc(failed)
    LAST_REPORT_SECONDS.set(report.elapsed_s)

# === START SERVER ===

def start_metrics_server(port: int):
    """Serve the lorentzkit metrics on /metrics; returns the (server, thread) pair."""
    server, thread = start_http_server(port)
    logger.info(f"[Metrics] exporting {', '.join(EXPORTED)} on http://localhost:{port}/metrics")
    return server, thread
