# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels: single-pass tokenizer, repeat-collapse, mask counting.

Must stay behaviorally identical to ``pure.py``; the test suite compares
the two backends on arbitrary input.  Case-folding is done with str.lower()
up front so both backends share CPython's full Unicode case mapping; the
per-character alphanumeric test matches str.isalnum().
"""

from cpython.unicode cimport Py_UNICODE_ISALNUM
from libc.stdlib cimport free, malloc

cdef extern from "Python.h":
    str PyUnicode_FromKindAndData(int kind, const void *buffer, Py_ssize_t size)
    int PyUnicode_4BYTE_KIND

BACKEND = "c"


def collapse_repeats(str token):
    """Shorten every run of 3+ identical characters to exactly 2."""
    cdef Py_ssize_t n = len(token)
    cdef Py_ssize_t i, w = 0
    cdef Py_UCS4 ch
    cdef Py_UCS4 *buf = <Py_UCS4 *> malloc((n if n > 0 else 1) * sizeof(Py_UCS4))
    if buf == NULL:
        raise MemoryError
    try:
        for i in range(n):
            ch = token[i]
            if w >= 2 and buf[w - 1] == ch and buf[w - 2] == ch:
                continue
            buf[w] = ch
            w += 1
        if w == n:
            return token
        return PyUnicode_FromKindAndData(PyUnicode_4BYTE_KIND, buf, w)
    finally:
        free(buf)


def tokenize(str text, stopwords):
    """Lowercase, strip punctuation, split, collapse repeats, then drop
    tokens that are shorter than 3 characters, contain "http" (URL debris),
    or are stopwords."""
    cdef str lowered = text.lower()
    cdef Py_ssize_t n = len(lowered)
    cdef Py_ssize_t i, w = 0
    cdef Py_UCS4 ch
    cdef str tok
    cdef list out = []
    cdef Py_UCS4 *buf = <Py_UCS4 *> malloc((n if n > 0 else 1) * sizeof(Py_UCS4))
    if buf == NULL:
        raise MemoryError
    try:
        # One sentinel iteration past the end flushes the final token.
        for i in range(n + 1):
            if i < n:
                ch = lowered[i]
                if Py_UNICODE_ISALNUM(ch):
                    # Inline run-collapse: never emit a 3rd identical char.
                    if w >= 2 and buf[w - 1] == ch and buf[w - 2] == ch:
                        continue
                    buf[w] = ch
                    w += 1
                    continue
            if w >= 3:
                tok = PyUnicode_FromKindAndData(PyUnicode_4BYTE_KIND, buf, w)
                if "http" not in tok and tok not in stopwords:
                    out.append(tok)
            w = 0
        return out
    finally:
        free(buf)


def count_masks(list tokens, dict masks):
    """Per-category association counts over ``tokens``; 10-slot list."""
    cdef long counts[10]
    cdef int j
    cdef unsigned int mm
    cdef object m
    for j in range(10):
        counts[j] = 0
    for tok in tokens:
        m = masks.get(tok)
        if m is None:
            continue
        mm = m
        j = 0
        while mm:
            if mm & 1u:
                counts[j] += 1
            mm >>= 1
            j += 1
    return [counts[j] for j in range(10)]
