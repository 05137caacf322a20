from math import comb

from config import EXHAUSTIVE_LIMIT, MAX_PERMUTATION_ORDER, TERM_LIMIT
from gaborbench.utils.exceptions import MTooLarge, SubsetTooLarge, TooManyTerms


class EnumerationGuard:
    """Refuses exhaustive subset enumeration beyond a fixed budget."""

    def __init__(self, max_subsets: int = EXHAUSTIVE_LIMIT):
        """
        Initialize the enumeration guard.

        Args:
            max_subsets: Largest number of J-subsets an exhaustive scan may visit
        """
        self.max_subsets = max_subsets

    def check(self, n: int, k: int) -> int:
        """
        Check that binomial(n, k) subsets fit in the budget.

        Args:
            n: Number of frame vectors
            k: Number of retained vectors

        Returns:
            int: The number of subsets to enumerate

        Raises:
            SubsetTooLarge: If the enumeration would exceed the budget
        """
        count = comb(n, k)
        if count > self.max_subsets:
            raise SubsetTooLarge(count, self.max_subsets)
        return count


class TermGuard:
    """Refuses combinatorial sums with too many terms."""

    def __init__(self, max_terms: int = TERM_LIMIT):
        self.max_terms = max_terms

    def check(self, count: int) -> int:
        if count > self.max_terms:
            raise TooManyTerms(count, self.max_terms)
        return count


class PermutationGuard:
    """Refuses factorial permutation searches above a fixed order."""

    def __init__(self, max_order: int = MAX_PERMUTATION_ORDER):
        self.max_order = max_order

    def check(self, order: int) -> int:
        if order > self.max_order:
            raise MTooLarge(order, self.max_order)
        return order
