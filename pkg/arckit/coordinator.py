# arckit/coordinator.py
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Iterable, List, Optional
import logging

from arckit.claims import CLAIM_IDS, VERIFIERS, ClaimReport, Premise
from arckit.config import Config
from arckit.errors import ArckitError, FixtureInvalid, SizeCapExceeded
from arckit.storage import save_run

logger = logging.getLogger(__name__)


class Coordinator:
    """Runs claim verifiers, each isolated from the others' failures, and merges reports by claim id."""

    def __init__(self, config: Optional[Config] = None, workers: int = 1):
        self.config = config if config is not None else Config.from_env()
        self.workers = workers
        self.verifiers: Dict[str, Callable[..., ClaimReport]] = {}
        self._initialize_verifiers()

    def _initialize_verifiers(self):
        for claim in CLAIM_IDS:
            try:
                self.verifiers[claim] = VERIFIERS[claim]
                logger.debug("verifier %s registered", claim)
            except KeyError:
                logger.warning("no verifier registered for claim %s", claim)

    def _failed_report(self, claim: str, text: str) -> ClaimReport:
        report = ClaimReport(claim, expect_refuted=claim != "H1")
        report.premises.append(Premise(text, False))
        return report

    def _safe_verify(self, claim: str) -> ClaimReport:
        verifier = self.verifiers.get(claim)
        if verifier is None:
            return self._failed_report(claim, f"unknown claim {claim!r}")
        try:
            report = verifier(config=self.config)
            logger.info("claim %s: refuted=%s verified=%s", claim, report.refuted, report.verified)
            return report
        except FixtureInvalid as e:
            logger.error("claim %s: fixture invalid: %s", claim, e)
            return e.report if e.report is not None else self._failed_report(claim, str(e))
        except SizeCapExceeded as e:
            logger.warning("claim %s skipped: %s", claim, e)
            return self._failed_report(claim, f"skipped: {e}")
        except ArckitError as e:
            logger.exception("claim %s failed: %s", claim, e)
            return self._failed_report(claim, str(e))

    def run(self, claims: Optional[Iterable[str]] = None) -> List[ClaimReport]:
        wanted = list(claims) if claims else list(CLAIM_IDS)
        if self.workers > 1 and len(wanted) > 1:
            with ThreadPoolExecutor(max_workers=min(self.workers, len(wanted))) as pool:
                reports = list(pool.map(self._safe_verify, wanted))
        else:
            reports = [self._safe_verify(c) for c in wanted]
        order = {c: i for i, c in enumerate(CLAIM_IDS)}
        reports = sorted(reports, key=lambda r: (order.get(r.claim, len(order)), r.claim))
        if self.config.db_path:
            for report in reports:
                save_run("verify-claims", {"claim": report.claim}, report.to_dict(),
                         0 if report.verified else 2, db_path=self.config.db_path)
        return reports
