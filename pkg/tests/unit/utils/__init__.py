"""Unit tests for the utils module."""