"""Class for setting up POCO and running its computations."""

import logging
from pathlib import Path
from typing import (
    Optional,
    Sequence,
    Tuple,
)

from poco.builders.bruhat import BruhatOrder
from poco.builders.cell_complexes import (
    circle_poset,
    face_poset,
    rp2_poset,
    suspension_simplex_poset,
    tree_poset,
)
from poco.builders.io import (
    read_pd,
    read_poset,
    read_presheaf,
    read_simplicial,
)
from poco.builders.khovanov import khovanov
from poco.builders.lattices import (
    boolean_lattice,
    partition_lattice,
)
from poco.cohomology.cellular import (
    cell_signs,
    compare,
    filtration_complex,
    hc,
    is_cellular,
)
from poco.cohomology.complexes import cohomology
from poco.cohomology.singular import (
    hs,
    s_complex,
)
from poco.config.config_parser import ConfigParser
from poco.errors.exceptions import (
    InputError,
    PreconditionError,
)
from poco.models.reports import (
    CheckReport,
    CohomologyReport,
    ComparisonReport,
    SignReport,
)
from poco.posets.poset import Poset
from poco.posets.presheaf import (
    Presheaf,
    constant,
)

logger = logging.getLogger(__name__)

FAMILIES = {
    "boolean": 1,
    "partition": 1,
    "bruhat": 1,
    "tree": 2,
    "circle": 0,
    "rp2": 0,
    "suspension": 1,
    "cw": 1,
    "khovanov": 1,
}

METHODS = ("singular", "cellular", "degenerate", "filtration")


class Poco:
    def __init__(
        self,
        config_file: Optional[Path] = None,
        custom_config_model: Optional[str] = None,
        quiet: bool = False,
    ) -> None:
        """Instantiate POCO class.

        Args:
            config_file: Path to configuration file in YAML format. Cf.
                :py:class:`poco.models.config.Config` for the required file
                structure.
            custom_config_model: Path to model to be used for custom config
                parameter validation, supplied in "dot notation", e.g.,
                ``myapp.config.models.CustomConfig``.
            quiet: Whether only warnings and errors are logged.

        Attributes:
            config_file: Path to configuration file in YAML format.
            custom_config_model: Path to model to be used for custom config
                parameter validation.
            conf: Configuration. Instance of
                :py:class:`poco.models.config.Config`.
        """
        self.config_file: Optional[Path] = (
            Path(config_file) if config_file is not None else None
        )
        self.custom_config_model: Optional[str] = custom_config_model
        self.conf = ConfigParser(
            config_file=self.config_file,
            custom_config_model=self.custom_config_model,
            format_logs=True,
            quiet=quiet,
        ).config
        if self.config_file is not None:
            logger.info(f"Configuration file '{self.config_file}' parsed.")
        else:
            logger.info("Default configuration used.")

    # Input

    def _guard(self, poset: Poset) -> Poset:
        limit = self.conf.compute.max_poset_size
        if len(poset) > limit:
            raise PreconditionError(
                f"poset has {len(poset)} elements, more than the configured "
                f"maximum of {limit}"
            )
        return poset

    def load_poset(self, path: Path) -> Poset:
        """Read a poset file.

        Raises:
            PreconditionError: The poset exceeds the configured size.
        """
        poset = self._guard(read_poset(path))
        logger.info(f"Loaded poset '{path}': {poset.describe()}")
        return poset

    def load_presheaf(
        self,
        path: Optional[Path],
        poset: Poset,
    ) -> Presheaf:
        """Read a presheaf file; the constant presheaf ``Z`` if `path` is
        ``None``."""
        if path is None:
            logger.info("No presheaf given, using constant coefficients.")
            return constant(poset, 1)
        presheaf = read_presheaf(
            path, poset, check=self.conf.compute.validate_presheaves
        )
        logger.info(f"Loaded presheaf '{path}': {presheaf.describe()}")
        return presheaf

    def build(
        self,
        family: str,
        args: Sequence[str] = (),
    ) -> Tuple[Poset, Presheaf]:
        """Build an example poset with its presheaf.

        Families other than ``khovanov`` come with constant coefficients.

        Args:
            family: One of the keys of :py:data:`FAMILIES`.
            args: Size parameters, or the input file for ``cw`` and
                ``khovanov``.

        Raises:
            InputError: The family is unknown, arguments are missing or not
                integers.
        """
        if family not in FAMILIES:
            raise InputError(f"unknown family '{family}'")
        if len(args) != FAMILIES[family]:
            raise InputError(
                f"family '{family}' takes {FAMILIES[family]} argument(s), "
                f"got {len(args)}"
            )
        if family == "khovanov":
            poset, presheaf = khovanov(read_pd(args[0]))
            return self._guard(poset), presheaf
        if family == "cw":
            poset = face_poset(read_simplicial(args[0]))
        elif family == "circle":
            poset = circle_poset()
        elif family == "rp2":
            poset = rp2_poset()
        else:
            try:
                sizes = [int(a) for a in args]
            except ValueError as exc:
                raise InputError(
                    f"size arguments must be integers: {list(args)}"
                ) from exc
            if family == "boolean":
                poset = boolean_lattice(sizes[0])
            elif family == "partition":
                poset = partition_lattice(sizes[0])
            elif family == "bruhat":
                poset = BruhatOrder(sizes[0]).poset
            elif family == "tree":
                poset = tree_poset(sizes[0], sizes[1])
            else:
                poset = suspension_simplex_poset(sizes[0])
        logger.info(f"Built {family} poset: {poset.describe()}")
        return self._guard(poset), constant(poset, 1)

    # Computations

    def check(self, poset: Poset) -> CheckReport:
        """Grading, diamond property and cellularity of a poset."""
        if not poset.is_graded:
            return CheckReport(graded=False)
        verdict = is_cellular(poset)
        return CheckReport(
            graded=True,
            diamond=poset.has_diamond_property(),
            cellular=verdict.cellular,
            witness=verdict.witness_model(),
        )

    def cohomology(
        self,
        poset: Poset,
        presheaf: Presheaf,
        method: str = "singular",
    ) -> CohomologyReport:
        """Cohomology by the given method.

        Args:
            poset: The poset.
            presheaf: Coefficients.
            method: ``singular`` (nondegenerate simplices), ``cellular``,
                ``degenerate`` (all simplices, truncated above the longest
                chain by the configured margin) or ``filtration`` (the
                cellular complex from the corank filtration).

        Raises:
            InputError: The method is unknown.
            UngradedPosetError: A cellular method is used on an ungraded
                poset.
        """
        check = self.conf.compute.check_complexes
        if method == "singular":
            return hs(poset, presheaf, check=check)
        if method == "cellular":
            return hc(poset, presheaf, check=check)
        if method == "degenerate":
            bound = (
                poset.longest_chain_length()
                + self.conf.compute.singular_degree_margin
            )
            return cohomology(
                s_complex(poset, presheaf, bound, check=False), check=check
            )
        if method == "filtration":
            return cohomology(
                filtration_complex(poset, presheaf), check=check
            )
        raise InputError(
            f"unknown method '{method}', expected one of {list(METHODS)}"
        )

    def compare(self, poset: Poset, presheaf: Presheaf) -> ComparisonReport:
        report = compare(poset, presheaf)
        logger.info(f"Comparison: {report.describe()}")
        return report

    def signs(self, poset: Poset) -> SignReport:
        return cell_signs(poset)
