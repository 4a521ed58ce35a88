/*
 * Copyright 2015 Zalando SE
 * Licensed under the Apache License, Version 2.0
 */
package org.zalando.catwatch.backend.web;

import java.time.temporal.ChronoUnit;
import java.util.Collection;
import java.util.Date;
import java.util.List;

import org.slf4j.Logger;
import org.slf4j.LoggerFactory;
import org.springframework.beans.factory.annotation.Autowired;
import org.springframework.http.HttpStatus;
import org.springframework.http.ResponseEntity;
import org.springframework.web.bind.annotation.RequestMapping;
import org.springframework.web.bind.annotation.RequestMethod;
import org.springframework.web.bind.annotation.RequestParam;
import org.springframework.web.bind.annotation.RestController;

import io.swagger.annotations.ApiParam;

import org.zalando.catwatch.backend.model.Project;
import org.zalando.catwatch.backend.model.ProjectStats;
import org.zalando.catwatch.backend.repo.ProjectRepository;
import org.zalando.catwatch.backend.util.Constants;
import org.zalando.catwatch.backend.util.StringParser;

@RestController
@RequestMapping(value = "/statistics")
public class StatisticsController {

    private static final Logger logger = LoggerFactory.getLogger(StatisticsController.class);

    @Autowired
    private ProjectRepository projectRepository;

    @RequestMapping(value = "/projects", method = RequestMethod.GET)
    public ResponseEntity<Collection<ProjectStats>> statisticsProjectGet(
            @ApiParam(value = "List of github.com organizations to scan(comma seperated)", required = false)
            @RequestParam(value = Constants.API_REQUEST_PARAM_ORGANIZATIONS, required = false)
            String organizations,
            @ApiParam(value = "Date from which to start fetching statistics records from database(default = current date)")
            @RequestParam(value = Constants.API_REQUEST_PARAM_STARTDATE, required = false)
            String startDateString,
            @ApiParam(value = "Date till which statistics records will be fetched from database(default = current date)")
            @RequestParam(value = Constants.API_REQUEST_PARAM_ENDDATE, required = false)
            String endDateString
    ) throws java.text.ParseException {
        logger.info("fetching project statistics");
        Date now = new Date();
        Date startDate = parseDate(startDateString, Date.from(now.toInstant().minus(30, ChronoUnit.DAYS)));
        Date endDate = parseDate(endDateString, now);
        List<Project> projects = null;
        if (organizations == null) {
            projects = projectRepository.findProjectsByDateRange(startDate, endDate);
        } else {
            Collection<String> orgs = StringParser.parseStringList(organizations, ",");
            projects = projectRepository.findProjectsByOrganizationNameAndDateRange(orgs, startDate, endDate);
        }
        assert (projects != null);
        List<ProjectStats> result = ProjectStats.buildStats(projects);
        // only top 10 by last score
        result.sort((ps1, ps2) -> -ps1.getScores().get(ps1.getScores().size() - 1)
            .compareTo(ps2.getScores().get(ps2.getScores().size() - 1)));
        ResponseEntity<Collection<ProjectStats>> res = new ResponseEntity<>(result.subList(0, Math.min(10, result.size())), HttpStatus.OK);
        return res;
    }

    @RequestMapping(value = "/projects/top", method = RequestMethod.GET)
    public ResponseEntity<Collection<ProjectStats>> statisticsTopProjectsGet(
            @RequestParam(value = Constants.API_REQUEST_PARAM_LIMIT, required = false, defaultValue = "10")
            Integer limit,
            @RequestParam(value = Constants.API_REQUEST_PARAM_SORTBY, required = false, defaultValue = "score")
            String sortBy) {
        if (limit < 1 || limit > 100) {
            throw new IllegalArgumentException("limit must be between 1 and 100");
        }
        List<ProjectStats> result = ProjectStats.buildStats(projectRepository.findProjectsByDateRange(new Date(0), new Date()));
        return new ResponseEntity<>(result.subList(0, Math.min(limit, result.size())), HttpStatus.OK);
    }

    private static Date parseDate(String value, Date fallback) throws java.text.ParseException {
        if (value == null) {
            return fallback;
        }
        return new java.text.SimpleDateFormat("yyyy-MM-dd'T'HH:mm:ssX").parse(value);
    }
}
